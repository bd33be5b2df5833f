#pragma once

// Taxonomy value types and the per-dimension partial orders.
//
// Every dimension of an ODD descriptor is a small lattice ordered by
// permissiveness: "a supersedes b" means a admits every operating condition
// b admits, and at least one more. Descriptors compare under the product
// order of their dimensions.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace oddtax {

/// Thrown when a value would violate a type invariant.
class InvariantError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Relation { Equal, Supersedes, SubsumedBy, Incomparable };

std::string_view to_string(Relation r);

/// Reverses the direction of a relation (Supersedes <-> SubsumedBy).
Relation flip(Relation r);

/// Product-order combination of two per-axis relations.
Relation combine(Relation a, Relation b);

/// True when the left-hand side admits at least what the right-hand side does.
inline bool at_least(Relation r) {
  return r == Relation::Equal || r == Relation::Supersedes;
}

class SaeLevel {
 public:
  explicit SaeLevel(int level);
  static std::optional<SaeLevel> from_int(int level);

  int value() const { return level_; }
  friend bool operator==(SaeLevel, SaeLevel) = default;

 private:
  int level_;
};

class AdrlLevel {
 public:
  explicit AdrlLevel(int level);
  static std::optional<AdrlLevel> from_int(int level);

  int value() const { return level_; }
  friend auto operator<=>(AdrlLevel, AdrlLevel) = default;

 private:
  int level_;
};

struct AdrlText {
  std::string_view trl;
  std::string_view adrl;
};

/// Both columns of the TRL -> ADRL derivation table for `level`.
AdrlText adrl_description(AdrlLevel level);

/// ADRL 3 and 4 can be exercised entirely in-the-loop; 5+ need a vehicle.
bool simulation_sufficient(AdrlLevel level);

/// Either "any country" or a non-empty set of two-letter codes.
class CountryScope {
 public:
  static CountryScope any();
  /// Codes must be two uppercase ASCII letters, non-empty, duplicate-free.
  static CountryScope listed(std::vector<std::string> codes);

  bool is_any() const { return any_; }
  /// Sorted ascending; empty iff is_any().
  const std::vector<std::string>& codes() const { return codes_; }

  friend bool operator==(const CountryScope&, const CountryScope&) = default;

 private:
  CountryScope() = default;
  bool any_ = true;
  std::vector<std::string> codes_;
};

bool is_country_code(std::string_view code);

enum class RoadUserScope : std::uint8_t { AutomatedOnly, MixedNoVru, Any };

class RoadTypeSet {
 public:
  enum Flag : std::uint8_t {
    kHighway = 1 << 0,
    kHighwayExt = 1 << 1,
    kUrban = 1 << 2,
    kCountry = 1 << 3,
    kSpecial = 1 << 4,
  };
  static constexpr std::uint8_t kAllFlags = 0x1f;

  /// Rejects the empty set and H+ without H.
  explicit RoadTypeSet(std::uint8_t flags);
  static std::optional<RoadTypeSet> from_flags(std::uint8_t flags);
  static RoadTypeSet any() { return RoadTypeSet(kAllFlags); }
  static bool valid_flags(std::uint8_t flags);

  std::uint8_t flags() const { return flags_; }
  bool has(Flag f) const { return (flags_ & f) != 0; }
  bool is_any() const { return flags_ == kAllFlags; }

  friend bool operator==(RoadTypeSet, RoadTypeSet) = default;

 private:
  std::uint8_t flags_;
};

enum class Light : std::uint8_t { DaylightOnly, DayAndNight };
enum class Wetness : std::uint8_t { DryOnly, Wet, IceSnow };

struct EnvScope {
  Light light = Light::DayAndNight;
  Wetness wetness = Wetness::IceSnow;
  bool fog = true;

  static EnvScope any() { return {}; }
  bool is_any() const { return *this == any(); }
  friend bool operator==(const EnvScope&, const EnvScope&) = default;
};

enum class VelocityClass : std::uint8_t { V0, V1, V2, V3, V4, Unlimited };

/// Upper speed bound in km/h; empty for Unlimited.
std::optional<int> velocity_bound_kmh(VelocityClass v);

/// Free-form restriction tags. Insertion order is kept for display; equality
/// and ordering treat the tags as a set.
class RequirementTags {
 public:
  RequirementTags() = default;
  /// Each tag must be non-empty, lowercase, whitespace-free, contain neither
  /// '|' nor ',', and differ from "none". Duplicates are rejected.
  explicit RequirementTags(std::vector<std::string> tags);

  static bool is_valid_tag(std::string_view tag);

  const std::vector<std::string>& tags() const { return tags_; }
  std::vector<std::string> sorted() const;
  bool empty() const { return tags_.empty(); }
  std::size_t size() const { return tags_.size(); }
  bool contains(std::string_view tag) const;

  friend bool operator==(const RequirementTags& a, const RequirementTags& b);

 private:
  std::vector<std::string> tags_;
};

struct OddDescriptor {
  CountryScope countries = CountryScope::any();
  RoadUserScope road_users = RoadUserScope::Any;
  RoadTypeSet road_types = RoadTypeSet::any();
  EnvScope environment = EnvScope::any();
  VelocityClass velocity = VelocityClass::Unlimited;
  RequirementTags requirements;

  friend bool operator==(const OddDescriptor&, const OddDescriptor&) = default;
};

/// All dimensions unrestricted, no additional requirements.
OddDescriptor odd_top();

struct TaxonomyRecord {
  SaeLevel sae{0};
  OddDescriptor odd;
  std::optional<AdrlLevel> adrl;

  friend bool operator==(const TaxonomyRecord&, const TaxonomyRecord&) = default;
};

// Per-dimension orders.
Relation dimension_compare(const CountryScope& a, const CountryScope& b);
Relation dimension_compare(RoadUserScope a, RoadUserScope b);
Relation dimension_compare(RoadTypeSet a, RoadTypeSet b);
Relation dimension_compare(const EnvScope& a, const EnvScope& b);
Relation dimension_compare(VelocityClass a, VelocityClass b);
/// Fewer tags is more permissive.
Relation dimension_compare(const RequirementTags& a, const RequirementTags& b);

// Per-dimension least upper bounds.
CountryScope dimension_join(const CountryScope& a, const CountryScope& b);
RoadUserScope dimension_join(RoadUserScope a, RoadUserScope b);
RoadTypeSet dimension_join(RoadTypeSet a, RoadTypeSet b);
EnvScope dimension_join(const EnvScope& a, const EnvScope& b);
VelocityClass dimension_join(VelocityClass a, VelocityClass b);
RequirementTags dimension_join(const RequirementTags& a, const RequirementTags& b);

// Per-dimension greatest lower bounds; empty where the bound would be the
// (unrepresentable) empty set.
std::optional<CountryScope> dimension_meet(const CountryScope& a, const CountryScope& b);
RoadUserScope dimension_meet(RoadUserScope a, RoadUserScope b);
std::optional<RoadTypeSet> dimension_meet(RoadTypeSet a, RoadTypeSet b);
EnvScope dimension_meet(const EnvScope& a, const EnvScope& b);
VelocityClass dimension_meet(VelocityClass a, VelocityClass b);
RequirementTags dimension_meet(const RequirementTags& a, const RequirementTags& b);

/// Product order over the five categories plus the requirement tags.
Relation odd_compare(const OddDescriptor& a, const OddDescriptor& b);

/// Product order over the five categories only; requirement tags ignored.
Relation odd_compare_categories(const OddDescriptor& a, const OddDescriptor& b);

OddDescriptor odd_join(const OddDescriptor& a, const OddDescriptor& b);

/// Why a meet does not exist.
enum class NoOverlap : std::uint8_t { Countries, RoadTypes };

struct MeetResult {
  std::optional<OddDescriptor> value;
  std::optional<NoOverlap> no_overlap;

  bool has_value() const { return value.has_value(); }
};

MeetResult odd_meet(const OddDescriptor& a, const OddDescriptor& b);

}  // namespace oddtax
