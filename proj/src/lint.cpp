#include "oddtax/lint.hpp"

#include <algorithm>
#include <array>

#include "oddtax/iso3166.hpp"

namespace oddtax {

namespace {

constexpr std::array<RuleInfo, 5> kRules{{
    {"R001", "non-top ODD at SAE level 5", Severity::Error,
     "Level 5 means driving everywhere, at any time, under every condition: \"Only at Level 5 an "
     "\"unlimited\" ODD can be assumed.\" A level-5 record must therefore use the all-star ODD "
     "with no additional requirements."},
    {"R002", "level-4 highway system without H+", Severity::Warning,
     "A level-4 highway system must be able to bring a passenger to a safe stop on its own, which "
     "needs driveways, departures and service areas: \"at least \"H+\" is required\"."},
    {"R003", "unknown country code", Severity::Warning,
     "Country attributes are ISO 3166 alpha-2 codes; this code is not assigned in the embedded "
     "snapshot."},
    {"R004", "duplicate token", Severity::Warning,
     "The same token appears twice within one field; the duplicate has no effect."},
    {"R005", "redundant substituted environment token", Severity::Warning,
     "N substitutes L, R substitutes D and I substitutes R; the weaker token is ignored."},
}};

const RuleInfo& rule(std::string_view id) {
  return *std::find_if(kRules.begin(), kRules.end(), [&](const RuleInfo& r) { return r.id == id; });
}

Diagnostic make(std::string_view id, std::string message, std::optional<SourceSpan> span = std::nullopt) {
  const auto& r = rule(id);
  return Diagnostic{std::string(r.id), r.severity, std::move(message), span};
}

bool is_top(const OddDescriptor& odd) { return odd == odd_top(); }

}  // namespace

std::span<const RuleInfo> list_rules() { return kRules; }

RuleSet parse_rule_list(std::string_view list) {
  RuleSet out;
  std::size_t start = 0;
  while (start <= list.size()) {
    auto end = list.find(',', start);
    if (end == std::string_view::npos) end = list.size();
    auto item = list.substr(start, end - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) {
      const bool known =
          std::any_of(kRules.begin(), kRules.end(), [&](const RuleInfo& r) { return r.id == item; });
      if (!known) throw UnknownRuleId(std::string(item));
      out.emplace(item);
    }
    start = end + 1;
  }
  return out;
}

namespace {

// Rules needing an SAE level are skipped when `sae` is empty.
std::vector<Diagnostic> lint(std::optional<SaeLevel> sae, const OddDescriptor& odd,
                             const std::optional<RuleSet>& enabled,
                             std::span<const SourceObservation> observations) {
  if (enabled) {
    for (const auto& id : *enabled) {
      const bool known =
          std::any_of(kRules.begin(), kRules.end(), [&](const RuleInfo& r) { return r.id == id; });
      if (!known) throw UnknownRuleId(id);
    }
  }
  auto on = [&](std::string_view id) { return !enabled || enabled->empty() || enabled->contains(id); };

  std::vector<Diagnostic> out;
  const int level = sae ? sae->value() : -1;

  if (on("R001") && level == 5 && !is_top(odd)) {
    out.push_back(make("R001", "SAE level 5 requires an unrestricted ODD (all '*', no additional requirements)"));
  }

  if (on("R002") && level == 4 && odd.road_types.has(RoadTypeSet::kHighway) &&
      !odd.road_types.has(RoadTypeSet::kHighwayExt)) {
    out.push_back(make("R002", "SAE level 4 on highways should use H+ rather than H"));
  }

  if (on("R003")) {
    for (const auto& code : odd.countries.codes()) {
      if (!iso3166::is_assigned(code)) {
        out.push_back(make("R003", "country code '" + code + "' is not an assigned ISO 3166-1 alpha-2 code"));
      }
    }
  }

  for (const auto& obs : observations) {
    if (obs.kind == SourceObservation::Kind::DuplicateToken && on("R004")) {
      out.push_back(make("R004", "duplicate token '" + obs.token + "' in " + obs.field, obs.span));
    } else if (obs.kind == SourceObservation::Kind::RedundantEnvToken && on("R005")) {
      out.push_back(make("R005", "environment token '" + obs.token + "' is substituted by a stronger token",
                         obs.span));
    }
  }

  std::stable_sort(out.begin(), out.end(), [](const Diagnostic& a, const Diagnostic& b) {
    if (a.rule_id != b.rule_id) return a.rule_id < b.rule_id;
    return a.span < b.span;
  });
  return out;
}

}  // namespace

std::vector<Diagnostic> run_lints(const TaxonomyRecord& record, const std::optional<RuleSet>& enabled,
                                  std::span<const SourceObservation> observations) {
  return lint(record.sae, record.odd, enabled, observations);
}

std::vector<Diagnostic> run_lints(const OddDescriptor& odd, const std::optional<RuleSet>& enabled,
                                  std::span<const SourceObservation> observations) {
  return lint(std::nullopt, odd, enabled, observations);
}

std::vector<Diagnostic> check_text(std::string_view text, const std::optional<RuleSet>& enabled) {
  auto run = [&](auto parsed) {
    auto out = std::move(parsed.diagnostics);
    if (parsed.value) {
      auto lints = run_lints(*parsed.value, enabled, parsed.observations);
      out.insert(out.end(), lints.begin(), lints.end());
    }
    return out;
  };
  return looks_like_record(text) ? run(parse_record(text)) : run(parse_odd(text));
}

}  // namespace oddtax
