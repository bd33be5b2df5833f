#include "oddtax/model.hpp"

#include <algorithm>
#include <array>
#include <iterator>

namespace oddtax {

std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::Equal: return "Equal";
    case Relation::Supersedes: return "Supersedes";
    case Relation::SubsumedBy: return "SubsumedBy";
    case Relation::Incomparable: return "Incomparable";
  }
  return "Incomparable";
}

Relation flip(Relation r) {
  switch (r) {
    case Relation::Supersedes: return Relation::SubsumedBy;
    case Relation::SubsumedBy: return Relation::Supersedes;
    default: return r;
  }
}

Relation combine(Relation a, Relation b) {
  if (a == Relation::Equal) return b;
  if (b == Relation::Equal) return a;
  if (a == b) return a;
  return Relation::Incomparable;
}

namespace {

template <typename T>
Relation compare_ranks(T a, T b) {
  if (a == b) return Relation::Equal;
  return a > b ? Relation::Supersedes : Relation::SubsumedBy;
}

// Relation between two sets given as sorted ranges; the larger set supersedes.
template <typename Range>
Relation compare_sorted_sets(const Range& a, const Range& b) {
  const bool a_has_b = std::includes(a.begin(), a.end(), b.begin(), b.end());
  const bool b_has_a = std::includes(b.begin(), b.end(), a.begin(), a.end());
  if (a_has_b && b_has_a) return Relation::Equal;
  if (a_has_b) return Relation::Supersedes;
  if (b_has_a) return Relation::SubsumedBy;
  return Relation::Incomparable;
}

constexpr std::array<AdrlText, 9> kAdrlTable{{
    {"Basic principles observed and reported",
     "Basic Principles observed and reported (e.g. scientific result on new "
     "neural network architecture in fundamental research)"},
    {"Technology concept and/or application formulated",
     "Technology concept and/or application formulated"},
    {"Analytical and experimental critical function and/or characteristic "
     "proof-of-concept",
     "Proof-of-concept by SiL testing (software-in-the-loop)"},
    {"Component and/or breadboard validation in lab environment",
     "Verification by HiL testing (hardware-in-the-loop)"},
    {"Component and,or breadboard validation in relevant environment",
     "Verification by ViL testing (vehicle-in-the-loop)"},
    {"System/subsystem model or prototype demonstration in a relevant "
     "environment (ground or space)",
     "Demonstration in real vehicle with safety driver"},
    {"System prototype demonstration in space environment",
     "Validation in real vehicle in ODD with safety driver"},
    {"Actual system completed and “flight qualified” through test and "
     "demonstration (ground or space)",
     "Approval, certification, homologation for series production or customer "
     "operation"},
    {"Actual system “flight proven” through successful mission "
     "operations",
     "System in commercial use without safety driver"},
}};

}  // namespace

SaeLevel::SaeLevel(int level) : level_(level) {
  if (level < 0 || level > 5) {
    throw InvariantError("SAE level must be in 0..5, got " + std::to_string(level));
  }
}

std::optional<SaeLevel> SaeLevel::from_int(int level) {
  if (level < 0 || level > 5) return std::nullopt;
  return SaeLevel(level);
}

AdrlLevel::AdrlLevel(int level) : level_(level) {
  if (level < 1 || level > 9) {
    throw InvariantError("ADRL must be in 1..9, got " + std::to_string(level));
  }
}

std::optional<AdrlLevel> AdrlLevel::from_int(int level) {
  if (level < 1 || level > 9) return std::nullopt;
  return AdrlLevel(level);
}

AdrlText adrl_description(AdrlLevel level) {
  return kAdrlTable[static_cast<std::size_t>(level.value() - 1)];
}

bool simulation_sufficient(AdrlLevel level) {
  return level.value() == 3 || level.value() == 4;
}

bool is_country_code(std::string_view code) {
  return code.size() == 2 &&
         std::all_of(code.begin(), code.end(), [](char c) { return c >= 'A' && c <= 'Z'; });
}

CountryScope CountryScope::any() { return CountryScope(); }

CountryScope CountryScope::listed(std::vector<std::string> codes) {
  if (codes.empty()) throw InvariantError("country list must not be empty");
  for (const auto& c : codes) {
    if (!is_country_code(c)) throw InvariantError("invalid country code '" + c + "'");
  }
  std::sort(codes.begin(), codes.end());
  if (std::adjacent_find(codes.begin(), codes.end()) != codes.end()) {
    throw InvariantError("duplicate country code");
  }
  CountryScope scope;
  scope.any_ = false;
  scope.codes_ = std::move(codes);
  return scope;
}

RoadTypeSet::RoadTypeSet(std::uint8_t flags) : flags_(flags) {
  if (!valid_flags(flags)) {
    throw InvariantError("invalid road type flag set " + std::to_string(flags));
  }
}

bool RoadTypeSet::valid_flags(std::uint8_t flags) {
  if (flags == 0 || (flags & ~kAllFlags) != 0) return false;
  return !((flags & kHighwayExt) && !(flags & kHighway));
}

std::optional<RoadTypeSet> RoadTypeSet::from_flags(std::uint8_t flags) {
  if (!valid_flags(flags)) return std::nullopt;
  return RoadTypeSet(flags);
}

std::optional<int> velocity_bound_kmh(VelocityClass v) {
  switch (v) {
    case VelocityClass::V0: return 7;
    case VelocityClass::V1: return 12;
    case VelocityClass::V2: return 25;
    case VelocityClass::V3: return 60;
    case VelocityClass::V4: return 130;
    case VelocityClass::Unlimited: return std::nullopt;
  }
  return std::nullopt;
}

bool RequirementTags::is_valid_tag(std::string_view tag) {
  if (tag.empty() || tag == "none") return false;
  for (char c : tag) {
    if (c == '|' || c == ',' || c == ' ' || c == '\t' || c == '\n' || c == '\r') return false;
    if (c >= 'A' && c <= 'Z') return false;
  }
  return true;
}

RequirementTags::RequirementTags(std::vector<std::string> tags) : tags_(std::move(tags)) {
  for (const auto& t : tags_) {
    if (!is_valid_tag(t)) throw InvariantError("invalid requirement tag '" + t + "'");
  }
  auto s = sorted();
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
    throw InvariantError("duplicate requirement tag");
  }
}

std::vector<std::string> RequirementTags::sorted() const {
  auto s = tags_;
  std::sort(s.begin(), s.end());
  return s;
}

bool RequirementTags::contains(std::string_view tag) const {
  return std::find(tags_.begin(), tags_.end(), tag) != tags_.end();
}

bool operator==(const RequirementTags& a, const RequirementTags& b) {
  return a.size() == b.size() && a.sorted() == b.sorted();
}

OddDescriptor odd_top() { return OddDescriptor{}; }

Relation dimension_compare(const CountryScope& a, const CountryScope& b) {
  if (a.is_any() || b.is_any()) {
    if (a.is_any() && b.is_any()) return Relation::Equal;
    return a.is_any() ? Relation::Supersedes : Relation::SubsumedBy;
  }
  return compare_sorted_sets(a.codes(), b.codes());
}

Relation dimension_compare(RoadUserScope a, RoadUserScope b) { return compare_ranks(a, b); }

Relation dimension_compare(RoadTypeSet a, RoadTypeSet b) {
  const auto fa = a.flags();
  const auto fb = b.flags();
  if (fa == fb) return Relation::Equal;
  if ((fa & fb) == fb) return Relation::Supersedes;
  if ((fa & fb) == fa) return Relation::SubsumedBy;
  return Relation::Incomparable;
}

Relation dimension_compare(const EnvScope& a, const EnvScope& b) {
  Relation r = compare_ranks(a.light, b.light);
  r = combine(r, compare_ranks(a.wetness, b.wetness));
  return combine(r, compare_ranks(a.fog, b.fog));
}

Relation dimension_compare(VelocityClass a, VelocityClass b) { return compare_ranks(a, b); }

Relation dimension_compare(const RequirementTags& a, const RequirementTags& b) {
  return flip(compare_sorted_sets(a.sorted(), b.sorted()));
}

CountryScope dimension_join(const CountryScope& a, const CountryScope& b) {
  if (a.is_any() || b.is_any()) return CountryScope::any();
  std::vector<std::string> merged;
  std::set_union(a.codes().begin(), a.codes().end(), b.codes().begin(), b.codes().end(),
                 std::back_inserter(merged));
  return CountryScope::listed(std::move(merged));
}

RoadUserScope dimension_join(RoadUserScope a, RoadUserScope b) { return std::max(a, b); }

RoadTypeSet dimension_join(RoadTypeSet a, RoadTypeSet b) {
  return RoadTypeSet(a.flags() | b.flags());
}

EnvScope dimension_join(const EnvScope& a, const EnvScope& b) {
  return {std::max(a.light, b.light), std::max(a.wetness, b.wetness), a.fog || b.fog};
}

VelocityClass dimension_join(VelocityClass a, VelocityClass b) { return std::max(a, b); }

RequirementTags dimension_join(const RequirementTags& a, const RequirementTags& b) {
  std::vector<std::string> common;
  for (const auto& t : a.tags()) {
    if (b.contains(t)) common.push_back(t);
  }
  return RequirementTags(std::move(common));
}

std::optional<CountryScope> dimension_meet(const CountryScope& a, const CountryScope& b) {
  if (a.is_any()) return b;
  if (b.is_any()) return a;
  std::vector<std::string> common;
  std::set_intersection(a.codes().begin(), a.codes().end(), b.codes().begin(),
                        b.codes().end(), std::back_inserter(common));
  if (common.empty()) return std::nullopt;
  return CountryScope::listed(std::move(common));
}

RoadUserScope dimension_meet(RoadUserScope a, RoadUserScope b) { return std::min(a, b); }

std::optional<RoadTypeSet> dimension_meet(RoadTypeSet a, RoadTypeSet b) {
  return RoadTypeSet::from_flags(a.flags() & b.flags());
}

EnvScope dimension_meet(const EnvScope& a, const EnvScope& b) {
  return {std::min(a.light, b.light), std::min(a.wetness, b.wetness), a.fog && b.fog};
}

VelocityClass dimension_meet(VelocityClass a, VelocityClass b) { return std::min(a, b); }

RequirementTags dimension_meet(const RequirementTags& a, const RequirementTags& b) {
  auto all = a.tags();
  for (const auto& t : b.tags()) {
    if (!a.contains(t)) all.push_back(t);
  }
  return RequirementTags(std::move(all));
}

Relation odd_compare_categories(const OddDescriptor& a, const OddDescriptor& b) {
  Relation r = dimension_compare(a.countries, b.countries);
  if (r == Relation::Incomparable) return r;
  r = combine(r, dimension_compare(a.road_users, b.road_users));
  r = combine(r, dimension_compare(a.road_types, b.road_types));
  r = combine(r, dimension_compare(a.environment, b.environment));
  return combine(r, dimension_compare(a.velocity, b.velocity));
}

Relation odd_compare(const OddDescriptor& a, const OddDescriptor& b) {
  const Relation r = odd_compare_categories(a, b);
  if (r == Relation::Incomparable) return r;
  return combine(r, dimension_compare(a.requirements, b.requirements));
}

OddDescriptor odd_join(const OddDescriptor& a, const OddDescriptor& b) {
  return OddDescriptor{
      dimension_join(a.countries, b.countries),
      dimension_join(a.road_users, b.road_users),
      dimension_join(a.road_types, b.road_types),
      dimension_join(a.environment, b.environment),
      dimension_join(a.velocity, b.velocity),
      dimension_join(a.requirements, b.requirements),
  };
}

MeetResult odd_meet(const OddDescriptor& a, const OddDescriptor& b) {
  auto countries = dimension_meet(a.countries, b.countries);
  if (!countries) return {std::nullopt, NoOverlap::Countries};
  auto roads = dimension_meet(a.road_types, b.road_types);
  if (!roads) return {std::nullopt, NoOverlap::RoadTypes};
  return {OddDescriptor{
              std::move(*countries),
              dimension_meet(a.road_users, b.road_users),
              *roads,
              dimension_meet(a.environment, b.environment),
              dimension_meet(a.velocity, b.velocity),
              dimension_meet(a.requirements, b.requirements),
          },
          std::nullopt};
}

}  // namespace oddtax
