#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "oddtax/cli.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out;
  std::ostringstream err;
  const int code = oddtax::run_cli(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("oddtax_cli_" + name);
  std::ofstream(path, std::ios::binary) << content;
  return path.string();
}

}  // namespace

TEST(Cli, ParsePrintsCanonicalForm) {
  const auto r = run({"parse", "4 | ★ | A | S | ★ | v0"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "4 | * | A | S | * | v0 | none\n");
  EXPECT_EQ(run({"parse", "--unicode-star", "4|*|a|s|*|v0"}).out, "4 | ★ | A | S | ★ | v0 | none\n");
  EXPECT_EQ(run({"parse", "-"}, "US | * | H | LD | v3\n").out, "US | * | H | LD | v3 | none\n");
}

TEST(Cli, ParseErrorsExitOne) {
  const auto r = run({"parse", "6 | US | * | H | LD | v3"});
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("P002 error"), std::string::npos);
}

TEST(Cli, ParseJson) {
  const auto r = run({"parse", "--json", "4 | US | * | H+U | NR | v3 | onlySF | ADRL9"});
  ASSERT_EQ(r.code, 0);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["ok"], true);
  EXPECT_EQ(doc["kind"], "record");
  EXPECT_EQ(doc["value"]["adrl"], 9);
  EXPECT_EQ(doc["value"]["odd"]["velocityBoundKmh"], 60);
  const auto bad = nlohmann::json::parse(run({"parse", "--json", "4|US"}).out);
  EXPECT_EQ(bad["ok"], false);
  EXPECT_EQ(bad["diagnostics"][0]["rule"], "P001");
}

TEST(Cli, ValidateRecord) {
  const auto r001 = run({"validate", "5 | US | * | H | LD | v3"});
  EXPECT_EQ(r001.code, 1);
  EXPECT_NE(r001.err.find("R001 error"), std::string::npos);
  EXPECT_EQ(r001.out, "1 error(s), 0 warning(s)\n");

  const auto warn = run({"validate", "4 | US | * | H | LD | v3"});
  EXPECT_EQ(warn.code, 0);
  EXPECT_EQ(run({"validate", "--deny", "warning", "4 | US | * | H | LD | v3"}).code, 1);
  EXPECT_EQ(run({"validate", "--rules", "R003", "4 | US | * | H | LD | v3"}).code, 0);
  EXPECT_EQ(run({"validate", "--rules", "R042", "4 | US | * | H | LD | v3"}).code, 2);
  EXPECT_EQ(run({"validate", "--deny", "fatal", "4 | US | * | H | LD | v3"}).code, 2);
}

TEST(Cli, ValidateCatalogFile) {
  const auto path = temp_file("bad.txt", "Good :: 4 | US | * | H+ | NR | v4 | ADRL6\nBad :: 4 | US | * | Q | NR | v4\n");
  const auto r = run({"validate", path});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("entry 'Bad'"), std::string::npos);
  EXPECT_EQ(run({"validate", "paper-examples"}).code, 0);
}

TEST(Cli, Explain) {
  const auto r = run({"explain", "US | ★ | H+ | NR | v3 | none"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("- Velocity: v3 (< 60 km/h)\n"), std::string::npos) << r.out;
  const auto doc = nlohmann::json::parse(run({"explain", "--json", "4|US|*|H|LD|v3"}).out);
  EXPECT_EQ(doc[0]["category"], "SAE level");
}

TEST(Cli, Compare) {
  const auto r = run({"compare", "--json", "4 | US | ★ | H+ | NR | v4 | ADRL6",
                      "3 | DE US | ★ | H | LD | v3 | vehicleahead, noglare | ADRL9"});
  ASSERT_EQ(r.code, 0);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["overall"], "Incomparable");
  EXPECT_EQ(doc["saeDelta"], -1);
  EXPECT_EQ(doc["adrlDelta"], 3);
  EXPECT_EQ(run({"compare", "--out", "pdf", "4|US|*|H|LD|v3", "4|US|*|H|LD|v3"}).code, 2);
}

TEST(Cli, CatalogCommands) {
  EXPECT_EQ(run({"catalog", "check", "paper-examples"}).out, "0 error(s), 0 warning(s)\n");
  const auto list = run({"catalog", "list", "paper-examples"});
  EXPECT_EQ(list.code, 0);
  EXPECT_NE(list.out.find("Robotaxis :: 4 | US | * | H+U | NR | v3 | onlysf | ADRL9\n"), std::string::npos);

  const auto text = run({"catalog", "canonicalize", "--to", "text", "paper-examples"});
  ASSERT_EQ(text.code, 0);
  const auto path = temp_file("cat.txt", text.out);
  EXPECT_EQ(run({"catalog", "canonicalize", path}).out, text.out);
  const auto json = run({"catalog", "canonicalize", "--to", "json", path});
  EXPECT_EQ(nlohmann::json::parse(json.out)["entries"].size(), 5u);

  EXPECT_EQ(run({"catalog", "list", "/nonexistent/catalog.json"}).code, 2);
  EXPECT_EQ(run({"catalog", "list", temp_file("v2.json", R"({"version":2,"entries":[]})")}).code, 1);
}

TEST(Cli, Gaps) {
  const std::vector<std::string> args{"gaps", "--catalog", "paper-examples", "--axis", "country=DE,US",
                                      "--axis", "roads=U", "--sae", "4", "--out", "json"};
  const auto r = run(args);
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["summary"]["cells"], 2);
  EXPECT_EQ(doc["summary"]["whiteSpots"], 1);
  EXPECT_EQ(run(args).out, r.out);

  auto failing = args;
  failing.push_back("--fail-on-gaps");
  EXPECT_EQ(run(failing).code, 1);

  EXPECT_EQ(run({"gaps", "--catalog", "paper-examples", "--axis", "speed=v1"}).code, 2);
  EXPECT_EQ(run({"gaps", "--catalog", "paper-examples", "--min-adrl", "10"}).code, 2);
  EXPECT_EQ(run({"gaps", "--catalog", "paper-examples", "--sae", "7"}).code, 2);
}

TEST(Cli, GapsDefaultAndStrictTags) {
  const auto r = run({"gaps", "--catalog", "paper-examples", "--default", "country=US", "--axis", "roads=U",
                      "--sae", "4", "--no-relax-tags", "--out", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find(",false,\r\n"), std::string::npos) << r.out;
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"parse"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, RulesListing) {
  const auto r = run({"rules"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("R001 error:", 0), 0u);
  EXPECT_NE(r.out.find("R005 warning:"), std::string::npos);
}
