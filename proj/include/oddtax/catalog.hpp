#pragma once

// Named collections of classified systems, persisted as JSON or as a
// line-oriented `NAME :: TAXONOMY` text file.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "oddtax/diagnostic.hpp"
#include "oddtax/model.hpp"
#include "oddtax/parser.hpp"

namespace oddtax {

/// Calendar date in YYYY-MM-DD form.
struct CalendarDate {
  int year = 1970;
  int month = 1;
  int day = 1;

  static std::optional<CalendarDate> parse(std::string_view text);
  std::string to_string() const;
  friend auto operator<=>(const CalendarDate&, const CalendarDate&) = default;
};

struct CatalogEntry {
  std::string name;
  TaxonomyRecord record;
  std::optional<std::string> description;
  std::optional<std::string> source;
  std::optional<CalendarDate> date;

  friend bool operator==(const CatalogEntry&, const CatalogEntry&) = default;
};

enum class CatalogFormat { Json, Text };

/// Immutable snapshot; modifications return a new catalog.
class Catalog {
 public:
  static constexpr int kVersion = 1;

  Catalog() = default;
  /// Throws InvariantError on empty or case-insensitively duplicated names.
  explicit Catalog(std::vector<CatalogEntry> entries);

  int version() const { return kVersion; }
  const std::vector<CatalogEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  const CatalogEntry* find(std::string_view name) const;
  Catalog with_entry(CatalogEntry entry) const;
  Catalog without_entry(std::string_view name) const;

  friend bool operator==(const Catalog&, const Catalog&) = default;

 private:
  std::vector<CatalogEntry> entries_;
};

class CatalogError : public std::runtime_error {
 public:
  enum class Kind { MalformedContainer, UnsupportedVersion };
  CatalogError(Kind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct LoadedCatalog {
  Catalog catalog;
  /// Per-entry problems. Messages name the entry; spans refer to the
  /// entry's taxonomy string.
  std::vector<Diagnostic> diagnostics;
  /// Parser observations per retained entry, parallel to catalog.entries().
  std::vector<std::vector<SourceObservation>> observations;
};

/// Throws CatalogError for an unreadable container or unsupported version.
/// Entries that fail to parse are skipped and reported; for duplicate names
/// the first occurrence wins.
LoadedCatalog load_catalog(std::string_view bytes, CatalogFormat format);

/// `{` as the first non-whitespace byte means JSON.
CatalogFormat detect_format(std::string_view bytes);

std::string save_catalog(const Catalog& catalog, CatalogFormat format,
                         StarStyle style = StarStyle::Ascii);

struct QueryOptions {
  std::optional<SaeLevel> sae;
  std::optional<AdrlLevel> min_adrl;
  /// When set, entry requirement tags never block a match.
  bool relax_tags = true;
};

/// True when `entry` admits `demand` under the tag mode.
bool admits(const OddDescriptor& entry, const OddDescriptor& demand, bool relax_tags);

/// Entries admitting `demand` and passing the filters, in catalog order.
std::vector<CatalogEntry> query_catalog(const Catalog& catalog, const OddDescriptor& demand,
                                        const QueryOptions& options = {});

/// Bundled catalog of the five published example systems (JSON text).
std::string_view paper_examples_json();
inline constexpr std::string_view kPaperExamplesName = "paper-examples";

/// Stable identity string: entry count plus a FNV-1a hash of the canonical JSON.
std::string catalog_identity(const Catalog& catalog);

}  // namespace oddtax
