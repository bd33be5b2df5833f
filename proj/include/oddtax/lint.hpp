#pragma once

#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "oddtax/diagnostic.hpp"
#include "oddtax/model.hpp"
#include "oddtax/parser.hpp"

namespace oddtax {

struct RuleInfo {
  std::string_view id;
  std::string_view title;
  Severity severity;
  std::string_view rationale;
};

/// Registered rules, ascending by id.
std::span<const RuleInfo> list_rules();

class UnknownRuleId : public std::invalid_argument {
 public:
  explicit UnknownRuleId(const std::string& id)
      : std::invalid_argument("unknown rule id '" + id + "'"), id_(id) {}
  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

using RuleSet = std::set<std::string, std::less<>>;

/// Runs every enabled rule (all when `enabled` is empty). Source-level rules
/// (R004, R005) need the parser's observations for the same record.
/// Output is ordered by rule id, then span. Throws UnknownRuleId.
std::vector<Diagnostic> run_lints(const TaxonomyRecord& record,
                                  const std::optional<RuleSet>& enabled = std::nullopt,
                                  std::span<const SourceObservation> observations = {});

/// ODD-only variant; rules that need an SAE level (R001, R002) never fire.
std::vector<Diagnostic> run_lints(const OddDescriptor& odd,
                                  const std::optional<RuleSet>& enabled = std::nullopt,
                                  std::span<const SourceObservation> observations = {});

/// Parses `text` as a record or an ODD-only string and lints the result;
/// parser diagnostics come first.
std::vector<Diagnostic> check_text(std::string_view text,
                                   const std::optional<RuleSet>& enabled = std::nullopt);

/// Parses a comma-separated rule list, validating every id.
RuleSet parse_rule_list(std::string_view list);

}  // namespace oddtax
