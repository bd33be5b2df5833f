// Gap-analysis kernels. Cell evaluation is independent per cell, so the
// parallel kernel distributes cells over threads; each cell's covering list
// is built in catalog order, which keeps the report identical to the serial
// reference.

#include <cstddef>

#include "oddtax/analysis.hpp"

namespace oddtax {

namespace {

void evaluate_cell(const Catalog& catalog, GapCell& cell, bool relax_tags) {
  for (const auto& entry : catalog.entries()) {
    if (covers(entry, cell.demand, relax_tags)) cell.covering.push_back(entry.name);
  }
}

GapReport make_report(const Catalog& catalog, const GridSpec& grid, bool relax_tags) {
  GapReport report;
  report.grid = grid;
  report.cells = enumerate_cells(grid);
  report.generated_from = catalog_identity(catalog);
  report.relax_tags = relax_tags;
  return report;
}

}  // namespace

GapReport gap_analysis_serial(const Catalog& catalog, const GridSpec& grid, bool relax_tags) {
  GapReport report = make_report(catalog, grid, relax_tags);
  for (auto& cell : report.cells) evaluate_cell(catalog, cell, relax_tags);
  return report;
}

GapReport gap_analysis(const Catalog& catalog, const GridSpec& grid, bool relax_tags) {
  GapReport report = make_report(catalog, grid, relax_tags);
  const auto n = static_cast<std::ptrdiff_t>(report.cells.size());
  auto* cells = report.cells.data();
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    evaluate_cell(catalog, cells[i], relax_tags);
  }
  return report;
}

}  // namespace oddtax
