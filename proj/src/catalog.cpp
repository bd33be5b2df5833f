#include "oddtax/catalog.hpp"

#include <algorithm>
#include <cstdio>

#include "json.hpp"

namespace oddtax {

using json = nlohmann::ordered_json;

namespace {

std::string fold_case(std::string_view s) {
  std::string out(s);
  for (auto& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

bool valid_name(std::string_view name) {
  return !name.empty() && name.find('\n') == std::string_view::npos &&
         name.find('\r') == std::string_view::npos;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

Diagnostic entry_error(std::string_view code, std::string message) {
  return Diagnostic{std::string(code), Severity::Error, std::move(message), std::nullopt};
}

struct RawEntry {
  std::string name;
  std::string taxonomy;
  std::optional<std::string> description;
  std::optional<std::string> source;
  std::optional<CalendarDate> date;
  // Structural problems found while reading; a non-empty list rejects the entry.
  std::vector<Diagnostic> problems;
};

RawEntry rejected(Diagnostic d) {
  RawEntry r;
  r.problems.push_back(std::move(d));
  return r;
}

// Diagnostics come out in source order, whatever stage raised them.
LoadedCatalog assemble(std::vector<RawEntry> raw) {
  LoadedCatalog out;
  std::vector<Diagnostic> diagnostics;
  std::vector<CatalogEntry> entries;
  std::vector<std::string> seen;
  for (auto& r : raw) {
    if (!r.problems.empty()) {
      for (auto& d : r.problems) diagnostics.push_back(std::move(d));
      continue;
    }
    const auto key = fold_case(r.name);
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) {
      diagnostics.push_back(entry_error(codes::kDuplicateEntry,
                                        "entry '" + r.name + "': duplicate name, first occurrence kept"));
      continue;
    }
    auto parsed = parse_record(r.taxonomy);
    if (!parsed.value) {
      for (auto& d : parsed.diagnostics) {
        d.message = "entry '" + r.name + "': " + d.message;
        diagnostics.push_back(std::move(d));
      }
      continue;
    }
    seen.push_back(key);
    entries.push_back(CatalogEntry{std::move(r.name), std::move(*parsed.value), std::move(r.description),
                                   std::move(r.source), r.date});
    out.observations.push_back(std::move(parsed.observations));
  }
  out.catalog = Catalog(std::move(entries));
  out.diagnostics = std::move(diagnostics);
  return out;
}

LoadedCatalog load_json(std::string_view bytes) {
  json doc;
  try {
    doc = json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    throw CatalogError(CatalogError::Kind::MalformedContainer, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("version") || !doc.contains("entries")) {
    throw CatalogError(CatalogError::Kind::MalformedContainer,
                       "catalog must be an object with \"version\" and \"entries\"");
  }
  if (!doc["version"].is_number_integer()) {
    throw CatalogError(CatalogError::Kind::MalformedContainer, "\"version\" must be an integer");
  }
  if (doc["version"].get<long long>() != Catalog::kVersion) {
    throw CatalogError(CatalogError::Kind::UnsupportedVersion,
                       "unsupported catalog version " + doc["version"].dump());
  }
  if (!doc["entries"].is_array()) {
    throw CatalogError(CatalogError::Kind::MalformedContainer, "\"entries\" must be an array");
  }

  std::vector<RawEntry> raw;
  std::size_t index = 0;
  for (const auto& item : doc["entries"]) {
    ++index;
    const std::string where = "entry #" + std::to_string(index);
    if (!item.is_object() || !item.contains("name") || !item["name"].is_string() ||
        !item.contains("taxonomy") || !item["taxonomy"].is_string()) {
      raw.push_back(rejected(entry_error(codes::kInvalidEntry, where + ": needs string \"name\" and \"taxonomy\"")));
      continue;
    }
    RawEntry r;
    r.name = item["name"].get<std::string>();
    r.taxonomy = item["taxonomy"].get<std::string>();
    if (!valid_name(r.name)) {
      raw.push_back(rejected(entry_error(codes::kInvalidEntry, where + ": name must be a non-empty single line")));
      continue;
    }
    auto optional_text = [&](const char* key, std::optional<std::string>& slot) {
      if (!item.contains(key)) return;
      if (!item[key].is_string()) {
        r.problems.push_back(entry_error(codes::kInvalidEntry,
                                         "entry '" + r.name + "': \"" + key + "\" must be a string"));
        return;
      }
      slot = item[key].get<std::string>();
    };
    optional_text("description", r.description);
    optional_text("source", r.source);
    std::optional<std::string> date_text;
    optional_text("date", date_text);
    if (date_text) {
      r.date = CalendarDate::parse(*date_text);
      if (!r.date) {
        r.problems.push_back(entry_error(codes::kInvalidEntry,
                                         "entry '" + r.name + "': date '" + *date_text + "' is not YYYY-MM-DD"));
      }
    }
    raw.push_back(std::move(r));
  }
  return assemble(std::move(raw));
}

LoadedCatalog load_text(std::string_view bytes) {
  std::vector<RawEntry> raw;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    auto end = bytes.find('\n', pos);
    if (end == std::string_view::npos) end = bytes.size();
    const auto line = trim(bytes.substr(pos, end - pos));
    const SourceSpan span{pos, end};
    pos = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto sep = line.find("::");
    if (sep == std::string_view::npos) {
      raw.push_back(rejected(Diagnostic{std::string(codes::kInvalidEntry), Severity::Error,
                                       "line " + std::to_string(line_no) + ": expected 'NAME :: TAXONOMY'", span}));
      continue;
    }
    RawEntry r;
    r.name = std::string(trim(line.substr(0, sep)));
    r.taxonomy = std::string(trim(line.substr(sep + 2)));
    if (r.name.empty()) {
      raw.push_back(rejected(Diagnostic{std::string(codes::kInvalidEntry), Severity::Error,
                                       "line " + std::to_string(line_no) + ": empty entry name", span}));
      continue;
    }
    raw.push_back(std::move(r));
  }
  return assemble(std::move(raw));
}

}  // namespace

std::optional<CalendarDate> CalendarDate::parse(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  auto number = [&](std::size_t at, std::size_t len) -> std::optional<int> {
    int v = 0;
    for (std::size_t i = at; i < at + len; ++i) {
      if (text[i] < '0' || text[i] > '9') return std::nullopt;
      v = v * 10 + (text[i] - '0');
    }
    return v;
  };
  const auto y = number(0, 4);
  const auto m = number(5, 2);
  const auto d = number(8, 2);
  if (!y || !m || !d || *m < 1 || *m > 12 || *d < 1) return std::nullopt;
  static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  const int limit = kDays[*m - 1] + ((*m == 2 && is_leap(*y)) ? 1 : 0);
  if (*d > limit) return std::nullopt;
  return CalendarDate{*y, *m, *d};
}

std::string CalendarDate::to_string() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day);
  return buf;
}

Catalog::Catalog(std::vector<CatalogEntry> entries) : entries_(std::move(entries)) {
  std::vector<std::string> keys;
  for (const auto& e : entries_) {
    if (!valid_name(e.name)) throw InvariantError("catalog entry names must be non-empty single lines");
    keys.push_back(fold_case(e.name));
  }
  std::sort(keys.begin(), keys.end());
  if (std::adjacent_find(keys.begin(), keys.end()) != keys.end()) {
    throw InvariantError("catalog entry names must be unique");
  }
}

const CatalogEntry* Catalog::find(std::string_view name) const {
  const auto key = fold_case(name);
  for (const auto& e : entries_) {
    if (fold_case(e.name) == key) return &e;
  }
  return nullptr;
}

Catalog Catalog::with_entry(CatalogEntry entry) const {
  auto entries = entries_;
  entries.push_back(std::move(entry));
  return Catalog(std::move(entries));
}

Catalog Catalog::without_entry(std::string_view name) const {
  const auto key = fold_case(name);
  auto entries = entries_;
  std::erase_if(entries, [&](const CatalogEntry& e) { return fold_case(e.name) == key; });
  return Catalog(std::move(entries));
}

CatalogFormat detect_format(std::string_view bytes) {
  for (char c : bytes) {
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') continue;
    return c == '{' ? CatalogFormat::Json : CatalogFormat::Text;
  }
  return CatalogFormat::Text;
}

LoadedCatalog load_catalog(std::string_view bytes, CatalogFormat format) {
  return format == CatalogFormat::Json ? load_json(bytes) : load_text(bytes);
}

std::string save_catalog(const Catalog& catalog, CatalogFormat format, StarStyle style) {
  if (format == CatalogFormat::Text) {
    std::string out;
    for (const auto& e : catalog.entries()) {
      if (e.name.find("::") != std::string::npos) {
        throw InvariantError("entry name '" + e.name + "' cannot be written in text format");
      }
      out += e.name + " :: " + canonicalize(e.record, style) + "\n";
    }
    return out;
  }
  json doc;
  doc["version"] = catalog.version();
  doc["entries"] = json::array();
  for (const auto& e : catalog.entries()) {
    json item;
    item["name"] = e.name;
    item["taxonomy"] = canonicalize(e.record, style);
    if (e.description) item["description"] = *e.description;
    if (e.source) item["source"] = *e.source;
    if (e.date) item["date"] = e.date->to_string();
    doc["entries"].push_back(std::move(item));
  }
  return doc.dump(2) + "\n";
}

bool admits(const OddDescriptor& entry, const OddDescriptor& demand, bool relax_tags) {
  return at_least(relax_tags ? odd_compare_categories(entry, demand) : odd_compare(entry, demand));
}

std::vector<CatalogEntry> query_catalog(const Catalog& catalog, const OddDescriptor& demand,
                                        const QueryOptions& options) {
  std::vector<CatalogEntry> out;
  for (const auto& e : catalog.entries()) {
    if (options.sae && !(e.record.sae == *options.sae)) continue;
    if (options.min_adrl && (!e.record.adrl || *e.record.adrl < *options.min_adrl)) continue;
    if (!admits(e.record.odd, demand, options.relax_tags)) continue;
    out.push_back(e);
  }
  return out;
}

std::string catalog_identity(const Catalog& catalog) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : save_catalog(catalog, CatalogFormat::Json)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return "catalog:" + std::to_string(catalog.size()) + "-entries:fnv1a64:" + buf;
}

}  // namespace oddtax
