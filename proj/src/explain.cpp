#include <array>

#include "oddtax/iso3166.hpp"
#include "oddtax/parser.hpp"

namespace oddtax {

namespace {

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += sep;
    out += p;
  }
  return out;
}

std::string describe_countries(const CountryScope& c) {
  if (c.is_any()) return "any country";
  std::vector<std::string> names;
  for (const auto& code : c.codes()) {
    names.emplace_back(iso3166::name_of(code).value_or(code));
  }
  return join(names, ", ");
}

std::string describe_road_users(RoadUserScope u) {
  switch (u) {
    case RoadUserScope::AutomatedOnly: return "only automated traffic";
    case RoadUserScope::MixedNoVru: return "mixed traffic without VRU";
    case RoadUserScope::Any: break;
  }
  return "anything in mixed traffic";
}

std::string describe_road_types(RoadTypeSet r) {
  if (r.is_any()) return "any type of road";
  std::vector<std::string> parts;
  if (r.has(RoadTypeSet::kHighwayExt)) {
    parts.emplace_back("highway +");
  } else if (r.has(RoadTypeSet::kHighway)) {
    parts.emplace_back("highway");
  }
  if (r.has(RoadTypeSet::kUrban)) parts.emplace_back("urban");
  if (r.has(RoadTypeSet::kCountry)) parts.emplace_back("country");
  if (r.has(RoadTypeSet::kSpecial)) parts.emplace_back("special road");
  return join(parts, ", ");
}

std::string describe_env(const EnvScope& e) {
  if (e.is_any()) return "all weather and light conditions";
  std::string out = e.light == Light::DaylightOnly ? "daylight only operation" : "day and night operation";
  std::vector<std::string> excluded;
  switch (e.wetness) {
    case Wetness::DryOnly:
      out += ", in dry conditions only";
      excluded = {"no rain", "no ice", "no snow"};
      break;
    case Wetness::Wet:
      out += ", in dry and wet conditions";
      excluded = {"no ice", "no snow"};
      break;
    case Wetness::IceSnow:
      out += ", in dry, wet, ice and snow conditions";
      break;
  }
  if (e.fog) {
    out += ", including fog";
  } else {
    excluded.emplace_back("no fog");
  }
  if (!excluded.empty()) out += ", but " + join(excluded, ", ");
  return out;
}

std::string describe_velocity(VelocityClass v) {
  const auto bound = velocity_bound_kmh(v);
  if (!bound) return "no limit";
  return "< " + std::to_string(*bound) + " km/h";
}

constexpr std::array<std::string_view, 6> kSaeNames{
    "no driving automation",          "driver assistance",
    "partial driving automation",     "conditional driving automation",
    "high driving automation",        "full driving automation",
};

}  // namespace

std::vector<Explanation> explain(const OddDescriptor& odd) {
  std::vector<Explanation> lines;
  lines.push_back({"Country code", format_countries(odd.countries, StarStyle::Unicode),
                   describe_countries(odd.countries)});
  lines.push_back({"Road users", format_road_users(odd.road_users, StarStyle::Unicode),
                   describe_road_users(odd.road_users)});
  lines.push_back({"Road types", format_road_types(odd.road_types, StarStyle::Unicode),
                   describe_road_types(odd.road_types)});
  lines.push_back({"Environmental condition", format_env(odd.environment, StarStyle::Unicode),
                   describe_env(odd.environment)});
  lines.push_back({"Velocity", format_velocity(odd.velocity, StarStyle::Unicode),
                   describe_velocity(odd.velocity)});
  const bool none = odd.requirements.empty();
  lines.push_back({"Additional requirements", none ? "None" : join(odd.requirements.tags(), ", "),
                   none ? "" : "individual restrictions"});
  return lines;
}

std::vector<Explanation> explain(const TaxonomyRecord& record) {
  std::vector<Explanation> lines;
  const int sae = record.sae.value();
  lines.push_back({"SAE level", std::to_string(sae), std::string(kSaeNames[static_cast<std::size_t>(sae)])});
  for (auto& l : explain(record.odd)) lines.push_back(std::move(l));
  if (record.adrl) {
    lines.push_back({"ADRL", "ADRL" + std::to_string(record.adrl->value()),
                     std::string(adrl_description(*record.adrl).adrl)});
  }
  return lines;
}

std::string render_explanation(const std::vector<Explanation>& lines) {
  std::string out;
  for (const auto& l : lines) {
    out += "- " + l.category + ": " + l.code;
    if (!l.description.empty()) out += " (" + l.description + ")";
    out += '\n';
  }
  return out;
}

}  // namespace oddtax
