#pragma once

// Pipe-delimited taxonomy notation.
//
//   record := sae | countries | users | roads | env | velocity [| extras] [| adrl]
//   odd    :=       countries | users | roads | env | velocity [| extras]
//
// "★" and "*" are interchangeable. Tokens are case-insensitive; country codes
// are uppercased and requirement tags lowercased with whitespace removed.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oddtax/diagnostic.hpp"
#include "oddtax/model.hpp"

namespace oddtax {

/// A source-level oddity the parser resolved silently. Lint turns these
/// into warnings.
struct SourceObservation {
  enum class Kind {
    DuplicateToken,      // same token twice in one field
    RedundantEnvToken,   // L with N, or two different wetness tokens
  };
  Kind kind;
  std::string field;  // category name, e.g. "countries"
  std::string token;
  SourceSpan span;
};

template <typename T>
struct ParseResult {
  std::optional<T> value;
  std::vector<Diagnostic> diagnostics;
  std::vector<SourceObservation> observations;

  bool ok() const { return value.has_value(); }
};

ParseResult<TaxonomyRecord> parse_record(std::string_view input);
ParseResult<OddDescriptor> parse_odd(std::string_view input);

/// True when the first '|'-field is a single digit 0-5, i.e. the text is a
/// full record rather than an ODD-only string.
bool looks_like_record(std::string_view input);

enum class StarStyle { Ascii, Unicode };

inline constexpr std::string_view kUnicodeStar = "★";

std::string canonicalize(const TaxonomyRecord& record, StarStyle style = StarStyle::Ascii);
std::string canonicalize(const OddDescriptor& odd, StarStyle style = StarStyle::Ascii);

// Single-field renderings, shared with report output.
std::string format_countries(const CountryScope& c, StarStyle style = StarStyle::Ascii);
std::string format_road_users(RoadUserScope u, StarStyle style = StarStyle::Ascii);
std::string format_road_types(RoadTypeSet r, StarStyle style = StarStyle::Ascii);
std::string format_env(const EnvScope& e, StarStyle style = StarStyle::Ascii);
std::string format_velocity(VelocityClass v, StarStyle style = StarStyle::Ascii);
std::string format_requirements(const RequirementTags& t);

// Single-field parsers, used by the grid axis syntax. Errors are reported
// against `offset + position within text`.
ParseResult<CountryScope> parse_countries_field(std::string_view text, std::size_t offset = 0);
ParseResult<RoadUserScope> parse_road_users_field(std::string_view text, std::size_t offset = 0);
ParseResult<RoadTypeSet> parse_road_types_field(std::string_view text, std::size_t offset = 0);
ParseResult<EnvScope> parse_env_field(std::string_view text, std::size_t offset = 0);
ParseResult<VelocityClass> parse_velocity_field(std::string_view text, std::size_t offset = 0);
ParseResult<RequirementTags> parse_requirements_field(std::string_view text, std::size_t offset = 0);

struct Explanation {
  std::string category;
  std::string code;
  std::string description;
};

/// One line per category, with SAE level first and ADRL last when rated.
std::vector<Explanation> explain(const TaxonomyRecord& record);
std::vector<Explanation> explain(const OddDescriptor& odd);

/// "- Category: CODE (description)" bullets, one per line.
std::string render_explanation(const std::vector<Explanation>& lines);

}  // namespace oddtax
