#pragma once

// Pairwise comparison and white-spot (coverage gap) analysis.
//
// A gap analysis enumerates a grid of demand cells (SAE level x ODD x
// minimum ADRL) and lists, for every cell, the catalog entries that cover it.
// Cells with no covering entry are white spots.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "oddtax/catalog.hpp"
#include "oddtax/model.hpp"

namespace oddtax {

enum class Dimension { Countries, RoadUsers, RoadTypes, Environment, Velocity };

/// Axis names used on the command line and in reports: country, users,
/// roads, env, velocity.
std::string_view dimension_name(Dimension d);
std::optional<Dimension> dimension_from_name(std::string_view name);

using DimensionValue = std::variant<CountryScope, RoadUserScope, RoadTypeSet, EnvScope, VelocityClass>;

Dimension dimension_of(const DimensionValue& v);
std::string format_dimension_value(const DimensionValue& v, StarStyle style = StarStyle::Ascii);

struct GridAxis {
  Dimension dimension;
  std::vector<DimensionValue> values;
};

/// The weakest demand on every dimension that has a bottom: automated-only
/// traffic, daylight and dry without fog, v0, no tags. Countries and road
/// types have no bottom and default to any.
OddDescriptor weakest_demand();

struct GridSpec {
  std::vector<GridAxis> axes;
  OddDescriptor defaults = weakest_demand();
  AdrlLevel min_adrl{9};
  std::vector<SaeLevel> sae_levels{SaeLevel(2), SaeLevel(3), SaeLevel(4)};
};

class GridError : public std::invalid_argument {
 public:
  enum class Kind { EmptyGrid, InvalidGrid };
  GridError(Kind kind, const std::string& message) : std::invalid_argument(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Throws GridError(InvalidGrid) on repeated dimensions, empty or duplicated
/// axis values, or duplicated SAE levels.
void validate_grid(const GridSpec& grid);

/// Sets the non-enumerated default for one dimension.
void set_default(OddDescriptor& defaults, const DimensionValue& value);

/// Parses one `dimension=value,value,...` axis argument.
GridAxis parse_axis(std::string_view spec);
/// Parses one `dimension=value` default override.
DimensionValue parse_dimension_assignment(std::string_view spec);

struct DemandCell {
  SaeLevel sae;
  OddDescriptor odd;
  AdrlLevel min_adrl;
};

bool covers(const CatalogEntry& entry, const DemandCell& cell, bool relax_tags);

struct GapCell {
  DemandCell demand;
  /// Index into each axis' value list, parallel to GridSpec::axes.
  std::vector<std::size_t> coordinates;
  std::vector<std::string> covering;

  bool white_spot() const { return covering.empty(); }
};

struct GapReport {
  GridSpec grid;
  std::vector<GapCell> cells;
  std::string generated_from;
  bool relax_tags = true;

  std::size_t white_spot_count() const;
};

/// Cells in report order: lexicographic over the axes as declared, SAE
/// level ascending innermost. Throws GridError.
std::vector<GapCell> enumerate_cells(const GridSpec& grid);

/// OpenMP-parallel over cells.
GapReport gap_analysis(const Catalog& catalog, const GridSpec& grid, bool relax_tags = true);

/// Single-threaded reference of gap_analysis; identical output.
GapReport gap_analysis_serial(const Catalog& catalog, const GridSpec& grid, bool relax_tags = true);

struct ComparisonReport {
  std::string a_name;
  std::string b_name;
  std::vector<std::pair<std::string, Relation>> per_dimension;
  Relation overall = Relation::Equal;
  /// b minus a.
  int sae_delta = 0;
  std::optional<int> adrl_delta;
};

ComparisonReport compare_entries(const CatalogEntry& a, const CatalogEntry& b);

enum class ReportFormat { Markdown, Csv, Json };

std::optional<ReportFormat> report_format_from_string(std::string_view s);

std::string render_report(const GapReport& report, ReportFormat format);
std::string render_report(const ComparisonReport& report, ReportFormat format);

/// RFC 4180 field quoting.
std::string csv_field(std::string_view text);

}  // namespace oddtax
