#include <benchmark/benchmark.h>

#include "kscert/catalog.hpp"

using namespace kscert;

static void BM_CatalogProjectors(benchmark::State& state) {
  const VectorSet& s = builtin_set("peres33");
  for (auto _ : state) {
    auto projs = s.projectors();
    benchmark::DoNotOptimize(projs);
  }
}
BENCHMARK(BM_CatalogProjectors);

static void BM_PMEvents(benchmark::State& state) {
  for (auto _ : state) {
    auto events = pm_events();
    benchmark::DoNotOptimize(events);
  }
}
BENCHMARK(BM_PMEvents);

BENCHMARK_MAIN();
