#pragma once

// Test-only enumeration of the reduced universe and random generators.

#include <random>
#include <string>
#include <vector>

#include "oddtax/model.hpp"

namespace oddtax::testing {

inline std::vector<CountryScope> all_countries() {
  return {CountryScope::any(), CountryScope::listed({"DE"}), CountryScope::listed({"US"}),
          CountryScope::listed({"DE", "US"})};
}

inline std::vector<RoadUserScope> all_users() {
  return {RoadUserScope::AutomatedOnly, RoadUserScope::MixedNoVru, RoadUserScope::Any};
}

inline std::vector<RoadTypeSet> all_road_sets() {
  std::vector<RoadTypeSet> out;
  for (int f = 0; f < 32; ++f) {
    if (auto r = RoadTypeSet::from_flags(static_cast<std::uint8_t>(f))) out.push_back(*r);
  }
  return out;
}

inline std::vector<EnvScope> all_envs() {
  std::vector<EnvScope> out;
  for (auto l : {Light::DaylightOnly, Light::DayAndNight}) {
    for (auto w : {Wetness::DryOnly, Wetness::Wet, Wetness::IceSnow}) {
      for (bool fog : {false, true}) out.push_back({l, w, fog});
    }
  }
  return out;
}

inline std::vector<VelocityClass> all_velocities() {
  return {VelocityClass::V0, VelocityClass::V1, VelocityClass::V2,
          VelocityClass::V3, VelocityClass::V4, VelocityClass::Unlimited};
}

inline std::vector<RequirementTags> all_tag_sets() {
  return {RequirementTags{}, RequirementTags({"vehicleahead"}), RequirementTags({"noglare"}),
          RequirementTags({"vehicleahead", "noglare"})};
}

/// Every descriptor of the reduced universe (4 * 3 * 23 * 12 * 6 * 4).
inline std::vector<OddDescriptor> reduced_universe() {
  std::vector<OddDescriptor> out;
  for (const auto& c : all_countries())
    for (auto u : all_users())
      for (auto r : all_road_sets())
        for (const auto& e : all_envs())
          for (auto v : all_velocities())
            for (const auto& t : all_tag_sets()) out.push_back(OddDescriptor{c, u, r, e, v, t});
  return out;
}

template <typename T>
const T& pick(const std::vector<T>& v, std::mt19937_64& rng) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

/// Random descriptor over the full value space: any subset of a code pool
/// (including unassigned codes) and tags drawn from a pool with non-ASCII
/// members.
inline OddDescriptor random_odd(std::mt19937_64& rng) {
  static const std::vector<std::string> kCodes{"DE", "US", "JP", "FR", "CN", "GB", "ZZ", "XK", "SE"};
  static const std::vector<std::string> kTags{"vehicleahead", "noglare", "onlysf", "geo-fenced",
                                              "max2lanes", "straße", "hub_to_hub", "x"};
  static const auto kRoads = all_road_sets();
  static const auto kEnvs = all_envs();
  static const auto kUsers = all_users();
  static const auto kVel = all_velocities();

  std::bernoulli_distribution coin(0.5);
  OddDescriptor d;
  if (coin(rng)) {
    std::vector<std::string> codes;
    for (const auto& c : kCodes) {
      if (std::bernoulli_distribution(0.25)(rng)) codes.push_back(c);
    }
    if (codes.empty()) codes.push_back(pick(kCodes, rng));
    d.countries = CountryScope::listed(codes);
  }
  d.road_users = pick(kUsers, rng);
  d.road_types = pick(kRoads, rng);
  d.environment = pick(kEnvs, rng);
  d.velocity = pick(kVel, rng);
  std::vector<std::string> tags;
  for (const auto& t : kTags) {
    if (std::bernoulli_distribution(0.2)(rng)) tags.push_back(t);
  }
  std::shuffle(tags.begin(), tags.end(), rng);
  d.requirements = RequirementTags(tags);
  return d;
}

inline TaxonomyRecord random_record(std::mt19937_64& rng) {
  TaxonomyRecord r;
  r.sae = SaeLevel(std::uniform_int_distribution<int>(0, 5)(rng));
  r.odd = random_odd(rng);
  if (std::bernoulli_distribution(0.7)(rng)) r.adrl = AdrlLevel(std::uniform_int_distribution<int>(1, 9)(rng));
  return r;
}

}  // namespace oddtax::testing
