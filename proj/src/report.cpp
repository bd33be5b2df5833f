#include <map>

#include "json.hpp"
#include "oddtax/analysis.hpp"
#include "oddtax/parser.hpp"

namespace oddtax {

using json = nlohmann::ordered_json;

namespace {

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string md_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

std::string_view mode_name(bool relax_tags) { return relax_tags ? "relaxed-tags" : "strict-tags"; }

std::string axis_value(const GapReport& r, const GapCell& cell, std::size_t axis) {
  return format_dimension_value(r.grid.axes[axis].values[cell.coordinates[axis]]);
}

std::string gap_markdown(const GapReport& r) {
  std::string out = "# White-spot analysis\n\n";
  out += "- catalog: " + r.generated_from + "\n";
  out += "- tag mode: " + std::string(mode_name(r.relax_tags)) + "\n";
  out += "- minimum ADRL: " + std::to_string(r.grid.min_adrl.value()) + "\n";
  out += "- cells: " + std::to_string(r.cells.size()) + ", white spots: " +
         std::to_string(r.white_spot_count()) + "\n";

  std::map<int, std::vector<const GapCell*>> by_level;
  for (const auto& c : r.cells) by_level[c.demand.sae.value()].push_back(&c);

  for (const auto& [level, cells] : by_level) {
    out += "\n## SAE level " + std::to_string(level) + "\n\n|";
    for (const auto& axis : r.grid.axes) out += " " + std::string(dimension_name(axis.dimension)) + " |";
    out += " demand | covered by |\n|";
    for (std::size_t i = 0; i < r.grid.axes.size() + 2; ++i) out += "---|";
    out += "\n";
    for (const auto* c : cells) {
      out += "|";
      for (std::size_t a = 0; a < r.grid.axes.size(); ++a) out += " " + md_escape(axis_value(r, *c, a)) + " |";
      out += " " + md_escape(canonicalize(c->demand.odd)) + " | ";
      out += c->white_spot() ? "WHITE SPOT" : md_escape(join(c->covering, ", "));
      out += " |\n";
    }
  }
  return out;
}

std::string gap_csv(const GapReport& r) {
  std::vector<std::string> header{"sae"};
  for (const auto& axis : r.grid.axes) header.emplace_back(dimension_name(axis.dimension));
  for (const char* h : {"min_adrl", "demand", "covered", "covering"}) header.emplace_back(h);
  std::string out = join(header, ",") + "\r\n";
  for (const auto& c : r.cells) {
    std::vector<std::string> row{std::to_string(c.demand.sae.value())};
    for (std::size_t a = 0; a < r.grid.axes.size(); ++a) row.push_back(csv_field(axis_value(r, c, a)));
    row.push_back(std::to_string(c.demand.min_adrl.value()));
    row.push_back(csv_field(canonicalize(c.demand.odd)));
    row.emplace_back(c.white_spot() ? "false" : "true");
    row.push_back(csv_field(join(c.covering, "; ")));
    out += join(row, ",") + "\r\n";
  }
  return out;
}

std::string gap_json(const GapReport& r) {
  json doc;
  doc["generatedFrom"] = r.generated_from;
  doc["mode"] = mode_name(r.relax_tags);
  doc["minAdrl"] = r.grid.min_adrl.value();
  json axes = json::array();
  for (const auto& axis : r.grid.axes) {
    json values = json::array();
    for (const auto& v : axis.values) values.push_back(format_dimension_value(v));
    axes.push_back({{"dimension", dimension_name(axis.dimension)}, {"values", values}});
  }
  doc["axes"] = axes;
  json cells = json::array();
  for (const auto& c : r.cells) {
    json coords = json::object();
    for (std::size_t a = 0; a < r.grid.axes.size(); ++a) {
      coords[std::string(dimension_name(r.grid.axes[a].dimension))] = axis_value(r, c, a);
    }
    json demand;
    demand["sae"] = c.demand.sae.value();
    demand["odd"] = canonicalize(c.demand.odd);
    demand["minAdrl"] = c.demand.min_adrl.value();
    demand["axes"] = coords;
    cells.push_back({{"demand", demand}, {"covering", c.covering}, {"whiteSpot", c.white_spot()}});
  }
  doc["cells"] = cells;
  doc["summary"] = {{"cells", r.cells.size()}, {"whiteSpots", r.white_spot_count()}};
  return doc.dump(2) + "\n";
}

std::string comparison_markdown(const ComparisonReport& r) {
  std::string out = "# Comparison: " + md_escape(r.a_name) + " vs " + md_escape(r.b_name) + "\n\n";
  out += "| dimension | relation |\n|---|---|\n";
  for (const auto& [name, rel] : r.per_dimension) out += "| " + name + " | " + std::string(to_string(rel)) + " |\n";
  out += "| overall | " + std::string(to_string(r.overall)) + " |\n\n";
  out += "- SAE delta (b - a): " + std::to_string(r.sae_delta) + "\n";
  out += "- ADRL delta (b - a): " + (r.adrl_delta ? std::to_string(*r.adrl_delta) : std::string("n/a")) + "\n";
  return out;
}

std::string comparison_csv(const ComparisonReport& r) {
  std::string out = "dimension,relation\r\n";
  for (const auto& [name, rel] : r.per_dimension) out += name + "," + std::string(to_string(rel)) + "\r\n";
  out += "overall," + std::string(to_string(r.overall)) + "\r\n";
  out += "sae_delta," + std::to_string(r.sae_delta) + "\r\n";
  out += "adrl_delta," + (r.adrl_delta ? std::to_string(*r.adrl_delta) : std::string()) + "\r\n";
  return out;
}

std::string comparison_json(const ComparisonReport& r) {
  json doc;
  doc["a"] = r.a_name;
  doc["b"] = r.b_name;
  json dims = json::array();
  for (const auto& [name, rel] : r.per_dimension) dims.push_back({{"dimension", name}, {"relation", to_string(rel)}});
  doc["perDimension"] = dims;
  doc["overall"] = to_string(r.overall);
  doc["saeDelta"] = r.sae_delta;
  doc["adrlDelta"] = r.adrl_delta ? json(*r.adrl_delta) : json(nullptr);
  return doc.dump(2) + "\n";
}

}  // namespace

std::optional<ReportFormat> report_format_from_string(std::string_view s) {
  if (s == "markdown" || s == "md") return ReportFormat::Markdown;
  if (s == "csv") return ReportFormat::Csv;
  if (s == "json") return ReportFormat::Json;
  return std::nullopt;
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string render_report(const GapReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::Markdown: return gap_markdown(report);
    case ReportFormat::Csv: return gap_csv(report);
    case ReportFormat::Json: return gap_json(report);
  }
  return {};
}

std::string render_report(const ComparisonReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::Markdown: return comparison_markdown(report);
    case ReportFormat::Csv: return comparison_csv(report);
    case ReportFormat::Json: return comparison_json(report);
  }
  return {};
}

}  // namespace oddtax
