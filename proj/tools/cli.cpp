#include "oddtax/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "oddtax/analysis.hpp"
#include "oddtax/catalog.hpp"
#include "oddtax/lint.hpp"
#include "oddtax/parser.hpp"

namespace oddtax {

namespace {

using json = nlohmann::ordered_json;

/// Raised for IO failures and bad arguments discovered after CLI11 parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Streams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

std::string read_stdin(std::istream& in) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
  return text;
}

std::string resolve_text(const std::string& arg, std::istream& in) {
  return arg == "-" ? read_stdin(in) : arg;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  if (f.bad()) throw UsageError("error reading '" + path + "'");
  return ss.str();
}

bool is_regular_file(const std::string& path) {
  std::error_code ec;
  return std::filesystem::is_regular_file(path, ec);
}

/// File contents, or the bundled catalog for the name "paper-examples".
std::string read_catalog_source(const std::string& path) {
  if (!is_regular_file(path) && path == kPaperExamplesName) return std::string(paper_examples_json());
  return read_file(path);
}

std::optional<CatalogFormat> format_option(const std::string& name) {
  if (name.empty()) return std::nullopt;
  if (name == "json") return CatalogFormat::Json;
  if (name == "text") return CatalogFormat::Text;
  throw UsageError("unknown catalog format '" + name + "' (use json or text)");
}

void print_diagnostics(std::ostream& err, const std::vector<Diagnostic>& diagnostics) {
  for (const auto& d : diagnostics) err << format_diagnostic(d) << '\n';
}

json diagnostics_json(const std::vector<Diagnostic>& diagnostics) {
  json arr = json::array();
  for (const auto& d : diagnostics) {
    json item{{"rule", d.rule_id}, {"severity", to_string(d.severity)}, {"message", d.message}};
    item["span"] = d.span ? json{{"start", d.span->start}, {"end", d.span->end}} : json(nullptr);
    arr.push_back(std::move(item));
  }
  return arr;
}

json odd_json(const OddDescriptor& odd) {
  json j;
  j["countries"] = odd.countries.is_any() ? json("*") : json(odd.countries.codes());
  j["roadUsers"] = format_road_users(odd.road_users);
  j["roadTypes"] = format_road_types(odd.road_types);
  const auto& env = odd.environment;
  j["environment"] = {{"light", env.light == Light::DaylightOnly ? "L" : "N"},
                      {"wetness", std::string(1, "DRI"[static_cast<int>(env.wetness)])},
                      {"fog", env.fog}};
  j["velocity"] = format_velocity(odd.velocity);
  const auto bound = velocity_bound_kmh(odd.velocity);
  j["velocityBoundKmh"] = bound ? json(*bound) : json(nullptr);
  j["requirements"] = odd.requirements.sorted();
  return j;
}

json record_json(const TaxonomyRecord& r) {
  json j;
  j["sae"] = r.sae.value();
  j["odd"] = odd_json(r.odd);
  j["adrl"] = r.adrl ? json(r.adrl->value()) : json(nullptr);
  return j;
}

// parse ---------------------------------------------------------------------

struct ParseArgs {
  std::string input;
  bool json = false;
  bool unicode = false;
};

int cmd_parse(const ParseArgs& a, Streams s) {
  const auto text = resolve_text(a.input, s.in);
  const auto style = a.unicode ? StarStyle::Unicode : StarStyle::Ascii;
  std::vector<Diagnostic> diagnostics;
  std::optional<std::string> canonical;
  json value = nullptr;
  std::string kind;
  if (looks_like_record(text)) {
    kind = "record";
    auto r = parse_record(text);
    diagnostics = r.diagnostics;
    if (r.value) {
      canonical = canonicalize(*r.value, style);
      value = record_json(*r.value);
    }
  } else {
    kind = "odd";
    auto r = parse_odd(text);
    diagnostics = r.diagnostics;
    if (r.value) {
      canonical = canonicalize(*r.value, style);
      value = odd_json(*r.value);
    }
  }
  print_diagnostics(s.err, diagnostics);
  if (a.json) {
    json doc;
    doc["ok"] = canonical.has_value();
    doc["kind"] = kind;
    doc["canonical"] = canonical ? json(*canonical) : json(nullptr);
    doc["value"] = value;
    doc["diagnostics"] = diagnostics_json(diagnostics);
    s.out << doc.dump(2) << '\n';
  } else if (canonical) {
    s.out << *canonical << '\n';
  }
  return canonical ? kExitOk : kExitFindings;
}

// validate ------------------------------------------------------------------

struct ValidateArgs {
  std::string input;
  std::string rules;
  std::string deny = "error";
};

std::vector<Diagnostic> lint_catalog_bytes(const std::string& bytes, std::optional<CatalogFormat> format,
                                           const std::optional<RuleSet>& rules) {
  const auto loaded = load_catalog(bytes, format.value_or(detect_format(bytes)));
  auto diagnostics = loaded.diagnostics;
  const auto& entries = loaded.catalog.entries();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (auto d : run_lints(entries[i].record, rules, loaded.observations[i])) {
      d.message = "entry '" + entries[i].name + "': " + d.message;
      diagnostics.push_back(std::move(d));
    }
  }
  return diagnostics;
}

int summarize(const std::vector<Diagnostic>& diagnostics, Severity threshold, Streams s) {
  print_diagnostics(s.err, diagnostics);
  std::size_t errors = 0;
  std::size_t warnings = 0;
  bool fail = false;
  for (const auto& d : diagnostics) {
    errors += d.severity == Severity::Error;
    warnings += d.severity == Severity::Warning;
    fail = fail || d.severity >= threshold;
  }
  s.out << errors << " error(s), " << warnings << " warning(s)\n";
  return fail ? kExitFindings : kExitOk;
}

int cmd_validate(const ValidateArgs& a, Streams s) {
  const auto threshold = severity_from_string(a.deny);
  if (!threshold) throw UsageError("--deny expects error, warning or info");
  std::optional<RuleSet> rules;
  if (!a.rules.empty()) rules = parse_rule_list(a.rules);

  if (a.input != "-" && (is_regular_file(a.input) || a.input == kPaperExamplesName)) {
    return summarize(lint_catalog_bytes(read_catalog_source(a.input), std::nullopt, rules), *threshold, s);
  }
  return summarize(check_text(resolve_text(a.input, s.in), rules), *threshold, s);
}

// explain -------------------------------------------------------------------

struct ExplainArgs {
  std::string input;
  bool json = false;
};

int cmd_explain(const ExplainArgs& a, Streams s) {
  const auto text = resolve_text(a.input, s.in);
  std::optional<std::vector<Explanation>> lines;
  if (looks_like_record(text)) {
    auto r = parse_record(text);
    print_diagnostics(s.err, r.diagnostics);
    if (r.value) lines = explain(*r.value);
  } else {
    auto r = parse_odd(text);
    print_diagnostics(s.err, r.diagnostics);
    if (r.value) lines = explain(*r.value);
  }
  if (!lines) return kExitFindings;
  if (a.json) {
    json arr = json::array();
    for (const auto& l : *lines) {
      arr.push_back({{"category", l.category}, {"code", l.code}, {"description", l.description}});
    }
    s.out << arr.dump(2) << '\n';
  } else {
    s.out << render_explanation(*lines);
  }
  return kExitOk;
}

// compare -------------------------------------------------------------------

struct CompareArgs {
  std::string a;
  std::string b;
  bool json = false;
  std::string out = "markdown";
};

int cmd_compare(const CompareArgs& args, Streams s) {
  auto format = report_format_from_string(args.out);
  if (!format) throw UsageError("--out expects markdown, csv or json");
  if (args.json) format = ReportFormat::Json;

  auto ra = parse_record(resolve_text(args.a, s.in));
  auto rb = parse_record(resolve_text(args.b, s.in));
  print_diagnostics(s.err, ra.diagnostics);
  print_diagnostics(s.err, rb.diagnostics);
  if (!ra.value || !rb.value) return kExitFindings;

  const auto report = compare_entries(CatalogEntry{"A", *ra.value, {}, {}, {}},
                                      CatalogEntry{"B", *rb.value, {}, {}, {}});
  s.out << render_report(report, *format);
  return kExitOk;
}

// catalog -------------------------------------------------------------------

struct CatalogArgs {
  std::string file;
  std::string format;
  std::string to;
  bool unicode = false;
};

LoadedCatalog load_catalog_file(const CatalogArgs& a, CatalogFormat& detected) {
  const auto bytes = read_catalog_source(a.file);
  detected = format_option(a.format).value_or(detect_format(bytes));
  return load_catalog(bytes, detected);
}

int cmd_catalog_check(const CatalogArgs& a, Streams s) {
  const auto bytes = read_catalog_source(a.file);
  const auto diagnostics = lint_catalog_bytes(bytes, format_option(a.format), std::nullopt);
  return summarize(diagnostics, Severity::Error, s);
}

int cmd_catalog_list(const CatalogArgs& a, Streams s) {
  CatalogFormat format{};
  const auto loaded = load_catalog_file(a, format);
  print_diagnostics(s.err, loaded.diagnostics);
  const auto style = a.unicode ? StarStyle::Unicode : StarStyle::Ascii;
  for (const auto& e : loaded.catalog.entries()) s.out << e.name << " :: " << canonicalize(e.record, style) << '\n';
  return loaded.diagnostics.empty() ? kExitOk : kExitFindings;
}

int cmd_catalog_canonicalize(const CatalogArgs& a, Streams s) {
  CatalogFormat format{};
  const auto loaded = load_catalog_file(a, format);
  print_diagnostics(s.err, loaded.diagnostics);
  const auto out_format = format_option(a.to).value_or(format);
  s.out << save_catalog(loaded.catalog, out_format, a.unicode ? StarStyle::Unicode : StarStyle::Ascii);
  return loaded.diagnostics.empty() ? kExitOk : kExitFindings;
}

// gaps ----------------------------------------------------------------------

struct GapsArgs {
  std::string catalog;
  std::vector<std::string> axes;
  std::vector<std::string> defaults;
  std::string sae = "2,3,4";
  int min_adrl = 9;
  bool no_relax_tags = false;
  std::string out = "markdown";
  bool fail_on_gaps = false;
};

std::vector<SaeLevel> parse_sae_list(const std::string& list) {
  std::vector<SaeLevel> levels;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove(item.begin(), item.end(), ' '), item.end());
    if (item.size() != 1 || item[0] < '0' || item[0] > '5') {
      throw UsageError("--sae expects a comma-separated list of levels 0-5, got '" + item + "'");
    }
    levels.emplace_back(item[0] - '0');
  }
  if (levels.empty()) throw UsageError("--sae needs at least one level");
  return levels;
}

int cmd_gaps(const GapsArgs& a, Streams s) {
  const auto format = report_format_from_string(a.out);
  if (!format) throw UsageError("--out expects markdown, csv or json");
  const auto min_adrl = AdrlLevel::from_int(a.min_adrl);
  if (!min_adrl) throw UsageError("--min-adrl expects 1-9");

  GridSpec grid;
  grid.min_adrl = *min_adrl;
  grid.sae_levels = parse_sae_list(a.sae);
  for (const auto& spec : a.axes) grid.axes.push_back(parse_axis(spec));
  for (const auto& spec : a.defaults) set_default(grid.defaults, parse_dimension_assignment(spec));

  const auto bytes = read_catalog_source(a.catalog);
  const auto loaded = load_catalog(bytes, detect_format(bytes));
  print_diagnostics(s.err, loaded.diagnostics);

  const auto report = gap_analysis(loaded.catalog, grid, !a.no_relax_tags);
  s.out << render_report(report, *format);
  return (a.fail_on_gaps && report.white_spot_count() > 0) ? kExitFindings : kExitOk;
}

int cmd_rules(Streams s) {
  for (const auto& r : list_rules()) {
    s.out << r.id << " " << to_string(r.severity) << ": " << r.title << "\n    " << r.rationale << '\n';
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Streams s{in, out, err};
  CLI::App app{"Classify automated driving systems by ODD, SAE level and readiness level", "oddtax"};
  app.require_subcommand(1);

  ParseArgs parse_args;
  auto* parse = app.add_subcommand("parse", "Parse a record or ODD string and print its canonical form");
  parse->add_option("input", parse_args.input, "Taxonomy string, or - for stdin")->required();
  parse->add_flag("--json", parse_args.json, "Print the structured value as JSON");
  parse->add_flag("--unicode-star", parse_args.unicode, "Render wildcards as ★");

  ValidateArgs validate_args;
  auto* validate = app.add_subcommand("validate", "Parse and lint a record string or a catalog file");
  validate->add_option("input", validate_args.input, "Record string, catalog file, or - for stdin")->required();
  validate->add_option("--rules", validate_args.rules, "Comma-separated rule ids to run (default: all)");
  validate->add_option("--deny", validate_args.deny, "Lowest severity that fails: error, warning or info");

  ExplainArgs explain_args;
  auto* explain_cmd = app.add_subcommand("explain", "Expand each attribute into its meaning");
  explain_cmd->add_option("input", explain_args.input, "Taxonomy string, or - for stdin")->required();
  explain_cmd->add_flag("--json", explain_args.json, "Print JSON");

  CompareArgs compare_args;
  auto* compare = app.add_subcommand("compare", "Compare two records dimension by dimension");
  compare->add_option("a", compare_args.a, "First record")->required();
  compare->add_option("b", compare_args.b, "Second record")->required();
  compare->add_flag("--json", compare_args.json, "Shorthand for --out json");
  compare->add_option("--out", compare_args.out, "markdown, csv or json");

  CatalogArgs catalog_args;
  auto* catalog = app.add_subcommand("catalog", "Inspect and normalize catalog files");
  catalog->require_subcommand(1);
  auto add_catalog_cmd = [&](const char* name, const char* help) {
    auto* cmd = catalog->add_subcommand(name, help);
    cmd->add_option("file", catalog_args.file, "Catalog file (or paper-examples)")->required();
    cmd->add_option("--format", catalog_args.format, "Input format json or text (default: detect)");
    cmd->add_flag("--unicode-star", catalog_args.unicode, "Render wildcards as ★");
    return cmd;
  };
  auto* check = add_catalog_cmd("check", "Report parse and lint problems");
  auto* list = add_catalog_cmd("list", "Print NAME :: CANONICAL per entry");
  auto* canon = add_catalog_cmd("canonicalize", "Rewrite the catalog in canonical form");
  canon->add_option("--to", catalog_args.to, "Output format json or text (default: input format)");

  GapsArgs gaps_args;
  auto* gaps = app.add_subcommand("gaps", "White-spot analysis over a demand grid");
  gaps->add_option("--catalog", gaps_args.catalog, "Catalog file (or paper-examples)")->required();
  gaps->add_option("--axis", gaps_args.axes, "DIMENSION=V1,V2,... (country, users, roads, env, velocity)");
  gaps->add_option("--default", gaps_args.defaults, "DIMENSION=VALUE for a non-enumerated dimension");
  gaps->add_option("--sae", gaps_args.sae, "Comma-separated SAE levels (default 2,3,4)");
  gaps->add_option("--min-adrl", gaps_args.min_adrl, "Minimum ADRL for coverage (default 9)");
  gaps->add_flag("--no-relax-tags", gaps_args.no_relax_tags, "Entry requirement tags must appear in the demand");
  gaps->add_option("--out", gaps_args.out, "markdown, csv or json");
  gaps->add_flag("--fail-on-gaps", gaps_args.fail_on_gaps, "Exit 1 when any white spot is found");

  auto* rules = app.add_subcommand("rules", "List lint rules");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*parse) return cmd_parse(parse_args, s);
    if (*validate) return cmd_validate(validate_args, s);
    if (*explain_cmd) return cmd_explain(explain_args, s);
    if (*compare) return cmd_compare(compare_args, s);
    if (*check) return cmd_catalog_check(catalog_args, s);
    if (*list) return cmd_catalog_list(catalog_args, s);
    if (*canon) return cmd_catalog_canonicalize(catalog_args, s);
    if (*gaps) return cmd_gaps(gaps_args, s);
    if (*rules) return cmd_rules(s);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UnknownRuleId& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const GridError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CatalogError& e) {
    err << "error: " << e.what() << '\n';
    return kExitFindings;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace oddtax
