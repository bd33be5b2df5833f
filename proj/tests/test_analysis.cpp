#include <gtest/gtest.h>

#include <random>

#include "json.hpp"
#include "oddtax/analysis.hpp"
#include "support/oracle.hpp"
#include "support/universe.hpp"

using namespace oddtax;

namespace {

Catalog bundled() { return load_catalog(paper_examples_json(), CatalogFormat::Json).catalog; }

CatalogEntry entry(std::string name, std::string_view taxonomy) {
  auto r = parse_record(taxonomy);
  EXPECT_TRUE(r.ok()) << taxonomy;
  return CatalogEntry{std::move(name), *r.value, {}, {}, {}};
}

GridSpec country_by_roads(int sae) {
  GridSpec g;
  g.axes = {parse_axis("country=DE,US"), parse_axis("roads=U")};
  g.sae_levels = {SaeLevel(sae)};
  return g;
}

}  // namespace

TEST(Covers, RequiresExactLevelAndRating) {
  const auto robotaxi = entry("R", "4 | US | * | H+U | NR | v3 | onlysf | ADRL9");
  auto odd = parse_odd("US | * | U | NR | v3");
  ASSERT_TRUE(odd.ok());
  EXPECT_TRUE(covers(robotaxi, {SaeLevel(4), *odd.value, AdrlLevel(9)}, true));
  EXPECT_FALSE(covers(robotaxi, {SaeLevel(4), *odd.value, AdrlLevel(9)}, false));
  EXPECT_FALSE(covers(robotaxi, {SaeLevel(3), *odd.value, AdrlLevel(9)}, true));
  EXPECT_TRUE(covers(robotaxi, {SaeLevel(4), *odd.value, AdrlLevel(5)}, true));
  const auto unrated = entry("U", "4 | US | * | H+U | NR | v3");
  EXPECT_FALSE(covers(unrated, {SaeLevel(4), *odd.value, AdrlLevel(1)}, true));
}

TEST(GapAnalysis, UrbanRobotaxiCoverage) {
  const auto report = gap_analysis(bundled(), country_by_roads(4));
  ASSERT_EQ(report.cells.size(), 2u);
  EXPECT_TRUE(report.cells[0].white_spot());
  EXPECT_EQ(format_dimension_value(report.grid.axes[0].values[report.cells[0].coordinates[0]]), "DE");
  EXPECT_EQ(report.cells[1].covering, std::vector<std::string>{"Robotaxis"});
  EXPECT_EQ(report.white_spot_count(), 1u);
}

TEST(GapAnalysis, LowerAdrlAdmitsEstimates) {
  GridSpec g;
  g.axes = {parse_axis("roads=S,H+")};
  g.sae_levels = {SaeLevel(4)};
  g.min_adrl = AdrlLevel(6);
  const auto report = gap_analysis(bundled(), g);
  ASSERT_EQ(report.cells.size(), 2u);
  EXPECT_EQ(report.cells[0].covering, (std::vector<std::string>{"Valet Parking", "Mining trucks"}));
  // Default countries are any, which the US-only truck pilot cannot admit.
  EXPECT_TRUE(report.cells[1].white_spot());
  g.defaults.countries = CountryScope::listed({"US"});
  // Robotaxis (H+U) admits an H+-only demand as well.
  EXPECT_EQ(gap_analysis(bundled(), g).cells[1].covering,
            (std::vector<std::string>{"Truck highway pilot", "Robotaxis"}));
}

TEST(GapAnalysis, EmptyCatalogIsAllWhiteSpots) {
  GridSpec g;
  g.axes = {parse_axis("velocity=v0,v1,v2,v3,v4,*"), parse_axis("users=A,P,*")};
  const auto report = gap_analysis(Catalog{}, g);
  EXPECT_EQ(report.cells.size(), 6u * 3u * 3u);
  EXPECT_EQ(report.white_spot_count(), report.cells.size());
}

TEST(GapAnalysis, GridErrors) {
  GridSpec g;
  g.sae_levels.clear();
  try {
    gap_analysis(bundled(), g);
    FAIL();
  } catch (const GridError& e) {
    EXPECT_EQ(e.kind(), GridError::Kind::EmptyGrid);
  }
  GridSpec dup;
  dup.axes = {parse_axis("country=DE"), parse_axis("country=US")};
  EXPECT_THROW(validate_grid(dup), GridError);
  EXPECT_THROW(parse_axis("speed=v1"), GridError);
  EXPECT_THROW(parse_axis("roads=H,X"), GridError);
  EXPECT_THROW(parse_axis("roads=H,"), GridError);
  GridSpec repeated;
  repeated.axes = {parse_axis("roads=H,H")};
  EXPECT_THROW(validate_grid(repeated), GridError);
}

TEST(GapAnalysis, CellCountAndOrder) {
  GridSpec g;
  g.axes = {parse_axis("country=DE,US,FR"), parse_axis("env=LD,NR")};
  g.sae_levels = {SaeLevel(4), SaeLevel(2)};
  const auto cells = enumerate_cells(g);
  ASSERT_EQ(cells.size(), 3u * 2u * 2u);
  std::size_t i = 0;
  for (std::size_t c = 0; c < 3; ++c) {
    for (std::size_t e = 0; e < 2; ++e) {
      for (int sae : {2, 4}) {
        EXPECT_EQ(cells[i].coordinates, (std::vector<std::size_t>{c, e}));
        EXPECT_EQ(cells[i].demand.sae.value(), sae);
        ++i;
      }
    }
  }
  // No axes: one descriptor per SAE level.
  EXPECT_EQ(enumerate_cells(GridSpec{}).size(), 3u);
}

TEST(GapAnalysis, DefaultsAreWeakestDemand) {
  const auto cells = enumerate_cells(GridSpec{});
  EXPECT_EQ(canonicalize(cells[0].demand.odd), "* | A | * | LD | v0 | none");
  EXPECT_EQ(cells[0].demand.min_adrl, AdrlLevel(9));
}

TEST(GapAnalysis, ParallelMatchesSerialAndOracle) {
  std::mt19937_64 rng(4242);
  for (int round = 0; round < 20; ++round) {
    std::vector<CatalogEntry> es;
    for (int i = 0; i < 40; ++i) es.push_back({"e" + std::to_string(i), oddtax::testing::random_record(rng), {}, {}, {}});
    const Catalog c(es);
    GridSpec g;
    g.axes = {parse_axis("country=DE,US,JP,*"), parse_axis("roads=H,H+,U,S,HUC"),
              parse_axis("env=LD,NR,NIF"), parse_axis("velocity=v1,v3,*")};
    g.sae_levels = {SaeLevel(2), SaeLevel(3), SaeLevel(4), SaeLevel(5)};
    g.min_adrl = AdrlLevel(1 + round % 9);
    const bool relax = round % 2 == 0;
    const auto par = gap_analysis(c, g, relax);
    const auto ser = gap_analysis_serial(c, g, relax);
    ASSERT_EQ(par.cells.size(), ser.cells.size());
    for (std::size_t i = 0; i < par.cells.size(); ++i) {
      ASSERT_EQ(par.cells[i].covering, ser.cells[i].covering);
      std::vector<std::string> expected;
      for (const auto& e : es) {
        if (oddtax::testing::oracle_covers(e, par.cells[i].demand, relax)) expected.push_back(e.name);
      }
      ASSERT_EQ(par.cells[i].covering, expected);
    }
    EXPECT_EQ(render_report(par, ReportFormat::Json), render_report(ser, ReportFormat::Json));
  }
}

TEST(GapAnalysis, AddingEntriesNeverOpensWhiteSpots) {
  std::mt19937_64 rng(17);
  GridSpec g;
  g.axes = {parse_axis("roads=H,H+,U,C,S"), parse_axis("velocity=v0,v2,v4")};
  g.sae_levels = {SaeLevel(3), SaeLevel(4)};
  g.min_adrl = AdrlLevel(1);
  Catalog c;
  auto prev = gap_analysis(c, g);
  for (int i = 0; i < 50; ++i) {
    c = c.with_entry({"e" + std::to_string(i), oddtax::testing::random_record(rng), {}, {}, {}});
    const auto next = gap_analysis(c, g);
    for (std::size_t k = 0; k < next.cells.size(); ++k) {
      if (!prev.cells[k].white_spot()) EXPECT_FALSE(next.cells[k].white_spot());
    }
    prev = next;
  }
}

TEST(Compare, TruckPilotVersusHighwayPilot) {
  const auto c = bundled();
  const auto r = compare_entries(*c.find("Truck highway pilot"), *c.find("Highway Pilot"));
  ASSERT_EQ(r.per_dimension.size(), 6u);
  EXPECT_EQ(r.per_dimension[0].second, Relation::SubsumedBy);
  EXPECT_EQ(r.per_dimension[1].second, Relation::Equal);
  for (std::size_t i = 2; i < 6; ++i) EXPECT_EQ(r.per_dimension[i].second, Relation::Supersedes) << i;
  EXPECT_EQ(r.overall, Relation::Incomparable);
  EXPECT_EQ(r.sae_delta, -1);
  EXPECT_EQ(r.adrl_delta, 3);
}

TEST(Compare, UnratedHasNoAdrlDelta) {
  const auto r = compare_entries(entry("a", "4|US|*|U|NR|v3"), entry("b", "4|US|*|U|NR|v3|ADRL2"));
  EXPECT_EQ(r.overall, Relation::Equal);
  EXPECT_FALSE(r.adrl_delta);
}

TEST(Report, Formats) {
  const auto report = gap_analysis(bundled(), country_by_roads(4));
  const auto md = render_report(report, ReportFormat::Markdown);
  EXPECT_NE(md.find("## SAE level 4"), std::string::npos);
  EXPECT_NE(md.find("| DE | U | DE \\| A \\| U \\| LD \\| v0 \\| none | WHITE SPOT |"), std::string::npos) << md;
  EXPECT_NE(md.find("| Robotaxis |"), std::string::npos);

  const auto csv = render_report(report, ReportFormat::Csv);
  EXPECT_EQ(csv.substr(0, csv.find("\r\n")), "sae,country,roads,min_adrl,demand,covered,covering");
  EXPECT_NE(csv.find("4,US,U,9,US | A | U | LD | v0 | none,true,Robotaxis\r\n"), std::string::npos) << csv;
  EXPECT_NE(csv.find(",false,\r\n"), std::string::npos);

  const auto doc = nlohmann::json::parse(render_report(report, ReportFormat::Json));
  EXPECT_EQ(doc["summary"]["whiteSpots"], 1);
  EXPECT_EQ(doc["cells"][1]["covering"][0], "Robotaxis");
  EXPECT_EQ(doc["cells"][0]["demand"]["axes"]["country"], "DE");
  EXPECT_EQ(doc["mode"], "relaxed-tags");
}

TEST(Report, CsvQuoting) {
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
}

TEST(Report, Deterministic) {
  const auto a = render_report(gap_analysis(bundled(), country_by_roads(4)), ReportFormat::Markdown);
  const auto b = render_report(gap_analysis(bundled(), country_by_roads(4)), ReportFormat::Markdown);
  EXPECT_EQ(a, b);
}

TEST(Report, ComparisonJson) {
  const auto c = bundled();
  const auto doc = nlohmann::json::parse(
      render_report(compare_entries(*c.find("Robotaxis"), *c.find("Mining trucks")), ReportFormat::Json));
  EXPECT_EQ(doc["a"], "Robotaxis");
  EXPECT_EQ(doc["overall"], "Incomparable");
  EXPECT_EQ(doc["saeDelta"], 0);
  EXPECT_EQ(doc["adrlDelta"], 0);
}
