#include "oddtax/analysis.hpp"

#include <algorithm>
#include <array>

#include "oddtax/parser.hpp"

namespace oddtax {

namespace {

constexpr std::array<std::string_view, 5> kDimensionNames{"country", "users", "roads", "env", "velocity"};

std::string first_error(const std::vector<Diagnostic>& diagnostics) {
  for (const auto& d : diagnostics) {
    if (d.severity == Severity::Error) return d.message;
  }
  return "invalid value";
}

template <typename T>
DimensionValue unwrap(ParseResult<T> parsed, std::string_view text) {
  if (!parsed.value) {
    throw GridError(GridError::Kind::InvalidGrid,
                    "'" + std::string(text) + "': " + first_error(parsed.diagnostics));
  }
  return DimensionValue(std::move(*parsed.value));
}

DimensionValue parse_value(Dimension d, std::string_view text) {
  switch (d) {
    case Dimension::Countries: return unwrap(parse_countries_field(text), text);
    case Dimension::RoadUsers: return unwrap(parse_road_users_field(text), text);
    case Dimension::RoadTypes: return unwrap(parse_road_types_field(text), text);
    case Dimension::Environment: return unwrap(parse_env_field(text), text);
    case Dimension::Velocity: return unwrap(parse_velocity_field(text), text);
  }
  throw GridError(GridError::Kind::InvalidGrid, "unknown dimension");
}

std::pair<Dimension, std::string_view> split_assignment(std::string_view spec) {
  const auto eq = spec.find('=');
  if (eq == std::string_view::npos) {
    throw GridError(GridError::Kind::InvalidGrid, "expected DIMENSION=VALUES, got '" + std::string(spec) + "'");
  }
  const auto name = spec.substr(0, eq);
  const auto dim = dimension_from_name(name);
  if (!dim) {
    throw GridError(GridError::Kind::InvalidGrid,
                    "unknown dimension '" + std::string(name) + "' (use country, users, roads, env, velocity)");
  }
  return {*dim, spec.substr(eq + 1)};
}

}  // namespace

std::string_view dimension_name(Dimension d) { return kDimensionNames[static_cast<std::size_t>(d)]; }

std::optional<Dimension> dimension_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kDimensionNames.size(); ++i) {
    if (kDimensionNames[i] == name) return static_cast<Dimension>(i);
  }
  return std::nullopt;
}

Dimension dimension_of(const DimensionValue& v) { return static_cast<Dimension>(v.index()); }

std::string format_dimension_value(const DimensionValue& v, StarStyle style) {
  return std::visit(
      [style](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, CountryScope>) return format_countries(x, style);
        if constexpr (std::is_same_v<T, RoadUserScope>) return format_road_users(x, style);
        if constexpr (std::is_same_v<T, RoadTypeSet>) return format_road_types(x, style);
        if constexpr (std::is_same_v<T, EnvScope>) return format_env(x, style);
        if constexpr (std::is_same_v<T, VelocityClass>) return format_velocity(x, style);
      },
      v);
}

OddDescriptor weakest_demand() {
  OddDescriptor d;
  d.road_users = RoadUserScope::AutomatedOnly;
  d.environment = EnvScope{Light::DaylightOnly, Wetness::DryOnly, false};
  d.velocity = VelocityClass::V0;
  return d;
}

void set_default(OddDescriptor& defaults, const DimensionValue& value) {
  std::visit(
      [&defaults](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, CountryScope>) defaults.countries = x;
        if constexpr (std::is_same_v<T, RoadUserScope>) defaults.road_users = x;
        if constexpr (std::is_same_v<T, RoadTypeSet>) defaults.road_types = x;
        if constexpr (std::is_same_v<T, EnvScope>) defaults.environment = x;
        if constexpr (std::is_same_v<T, VelocityClass>) defaults.velocity = x;
      },
      value);
}

void validate_grid(const GridSpec& grid) {
  std::vector<Dimension> seen;
  for (const auto& axis : grid.axes) {
    const auto name = std::string(dimension_name(axis.dimension));
    if (std::find(seen.begin(), seen.end(), axis.dimension) != seen.end()) {
      throw GridError(GridError::Kind::InvalidGrid, "dimension '" + name + "' appears on more than one axis");
    }
    seen.push_back(axis.dimension);
    if (axis.values.empty()) {
      throw GridError(GridError::Kind::InvalidGrid, "axis '" + name + "' has no values");
    }
    for (std::size_t i = 0; i < axis.values.size(); ++i) {
      if (dimension_of(axis.values[i]) != axis.dimension) {
        throw GridError(GridError::Kind::InvalidGrid, "axis '" + name + "' holds a value of another dimension");
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (axis.values[i] == axis.values[j]) {
          throw GridError(GridError::Kind::InvalidGrid,
                          "axis '" + name + "' repeats value " + format_dimension_value(axis.values[i]));
        }
      }
    }
  }
  for (std::size_t i = 0; i < grid.sae_levels.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (grid.sae_levels[i] == grid.sae_levels[j]) {
        throw GridError(GridError::Kind::InvalidGrid,
                        "SAE level " + std::to_string(grid.sae_levels[i].value()) + " listed twice");
      }
    }
  }
}

GridAxis parse_axis(std::string_view spec) {
  const auto [dim, rest] = split_assignment(spec);
  GridAxis axis{dim, {}};
  std::size_t start = 0;
  while (start <= rest.size()) {
    auto end = rest.find(',', start);
    if (end == std::string_view::npos) end = rest.size();
    axis.values.push_back(parse_value(dim, rest.substr(start, end - start)));
    start = end + 1;
  }
  return axis;
}

DimensionValue parse_dimension_assignment(std::string_view spec) {
  const auto [dim, rest] = split_assignment(spec);
  return parse_value(dim, rest);
}

bool covers(const CatalogEntry& entry, const DemandCell& cell, bool relax_tags) {
  const auto& r = entry.record;
  if (!(r.sae == cell.sae) || !r.adrl || *r.adrl < cell.min_adrl) return false;
  return admits(r.odd, cell.odd, relax_tags);
}

std::size_t GapReport::white_spot_count() const {
  return static_cast<std::size_t>(
      std::count_if(cells.begin(), cells.end(), [](const GapCell& c) { return c.white_spot(); }));
}

std::vector<GapCell> enumerate_cells(const GridSpec& grid) {
  validate_grid(grid);
  if (grid.sae_levels.empty()) throw GridError(GridError::Kind::EmptyGrid, "grid has no SAE levels");

  auto levels = grid.sae_levels;
  std::sort(levels.begin(), levels.end(), [](SaeLevel a, SaeLevel b) { return a.value() < b.value(); });

  std::vector<GapCell> cells;
  std::vector<std::size_t> coords(grid.axes.size(), 0);
  while (true) {
    OddDescriptor odd = grid.defaults;
    for (std::size_t a = 0; a < grid.axes.size(); ++a) set_default(odd, grid.axes[a].values[coords[a]]);
    for (const auto sae : levels) cells.push_back(GapCell{DemandCell{sae, odd, grid.min_adrl}, coords, {}});

    // Odometer increment, last axis fastest.
    std::size_t a = grid.axes.size();
    while (a > 0) {
      --a;
      if (++coords[a] < grid.axes[a].values.size()) break;
      coords[a] = 0;
      if (a == 0) return cells;
    }
    if (grid.axes.empty()) return cells;
  }
}

ComparisonReport compare_entries(const CatalogEntry& a, const CatalogEntry& b) {
  const auto& x = a.record.odd;
  const auto& y = b.record.odd;
  ComparisonReport report;
  report.a_name = a.name;
  report.b_name = b.name;
  report.per_dimension = {
      {"countries", dimension_compare(x.countries, y.countries)},
      {"users", dimension_compare(x.road_users, y.road_users)},
      {"roads", dimension_compare(x.road_types, y.road_types)},
      {"env", dimension_compare(x.environment, y.environment)},
      {"velocity", dimension_compare(x.velocity, y.velocity)},
      {"tags", dimension_compare(x.requirements, y.requirements)},
  };
  report.overall = Relation::Equal;
  for (const auto& [name, rel] : report.per_dimension) report.overall = combine(report.overall, rel);
  report.sae_delta = b.record.sae.value() - a.record.sae.value();
  if (a.record.adrl && b.record.adrl) report.adrl_delta = b.record.adrl->value() - a.record.adrl->value();
  return report;
}

}  // namespace oddtax
