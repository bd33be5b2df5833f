// Serial reference versus the OpenMP kernel on a synthetic catalog and a
// dense five-axis grid.

#include <benchmark/benchmark.h>

#include <map>
#include <random>

#include "oddtax/analysis.hpp"
#include "support/universe.hpp"

namespace {

using namespace oddtax;

const Catalog& synthetic_catalog(std::size_t size) {
  static std::map<std::size_t, Catalog> cache;
  auto it = cache.find(size);
  if (it == cache.end()) {
    std::mt19937_64 rng(size);
    std::vector<CatalogEntry> entries;
    for (std::size_t i = 0; i < size; ++i) {
      auto record = testing::random_record(rng);
      record.adrl = AdrlLevel(9);
      entries.push_back({"system-" + std::to_string(i), record, {}, {}, {}});
    }
    it = cache.emplace(size, Catalog(std::move(entries))).first;
  }
  return it->second;
}

GridSpec dense_grid() {
  GridSpec g;
  g.axes = {parse_axis("country=DE,US,JP,FR,CN,GB,*"), parse_axis("users=A,P,*"),
            parse_axis("roads=H,H+,U,C,S,H+U,HUC,*"), parse_axis("env=LD,ND,NR,NI,NRF,*"),
            parse_axis("velocity=v0,v1,v2,v3,v4,*")};
  g.sae_levels = {SaeLevel(2), SaeLevel(3), SaeLevel(4), SaeLevel(5)};
  g.min_adrl = AdrlLevel(1);
  return g;
}

template <GapReport (*Kernel)(const Catalog&, const GridSpec&, bool)>
void BM_Gap(benchmark::State& state) {
  const auto& catalog = synthetic_catalog(static_cast<std::size_t>(state.range(0)));
  const auto grid = dense_grid();
  std::size_t cells = 0;
  for (auto _ : state) {
    auto report = Kernel(catalog, grid, true);
    cells = report.cells.size();
    benchmark::DoNotOptimize(report);
  }
  state.counters["cells"] = static_cast<double>(cells);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cells * catalog.size()));
}

}  // namespace

BENCHMARK(BM_Gap<gap_analysis_serial>)->Name("gap_serial")->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Gap<gap_analysis>)->Name("gap_openmp")->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
