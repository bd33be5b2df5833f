#include "oddtax/diagnostic.hpp"

namespace oddtax {

std::string_view to_string(Severity s) {
  switch (s) {
    case Severity::Info: return "info";
    case Severity::Warning: return "warning";
    case Severity::Error: return "error";
  }
  return "error";
}

std::optional<Severity> severity_from_string(std::string_view s) {
  if (s == "info") return Severity::Info;
  if (s == "warning") return Severity::Warning;
  if (s == "error") return Severity::Error;
  return std::nullopt;
}

std::string format_diagnostic(const Diagnostic& d) {
  std::string out = d.rule_id + " " + std::string(to_string(d.severity)) + ": " + d.message;
  if (d.span) {
    out += " (at byte " + std::to_string(d.span->start) + ".." + std::to_string(d.span->end) + ")";
  }
  return out;
}

}  // namespace oddtax
