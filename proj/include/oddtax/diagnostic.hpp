#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace oddtax {

/// Half-open byte range over the text a diagnostic refers to.
struct SourceSpan {
  std::size_t start = 0;
  std::size_t end = 0;

  friend auto operator<=>(const SourceSpan&, const SourceSpan&) = default;
};

enum class Severity { Info, Warning, Error };

std::string_view to_string(Severity s);
std::optional<Severity> severity_from_string(std::string_view s);

/// A parser (P###) or lint (R###) finding.
struct Diagnostic {
  std::string rule_id;
  Severity severity = Severity::Error;
  std::string message;
  std::optional<SourceSpan> span;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

/// `RULEID severity: message (at byte X..Y)`
std::string format_diagnostic(const Diagnostic& d);

// Parser and container diagnostic identifiers.
namespace codes {
inline constexpr std::string_view kMissingFields = "P001";
inline constexpr std::string_view kInvalidSaeLevel = "P002";
inline constexpr std::string_view kInvalidToken = "P003";
inline constexpr std::string_view kTrailingGarbage = "P004";
inline constexpr std::string_view kEmptyField = "P005";
inline constexpr std::string_view kDuplicateEntry = "P010";
inline constexpr std::string_view kInvalidEntry = "P011";
}  // namespace codes

}  // namespace oddtax
