// Serial reference route vs the OpenMP kernels (generic and packed lattice).
// Arguments: horizon n; 64 samples per iteration.

#include <benchmark/benchmark.h>

#include "rangewalk/estimators.hpp"
#include "rangewalk/kernels.hpp"

namespace rw = rangewalk;

namespace {

constexpr std::uint64_t kSamples = 64;

void lattice_reference(benchmark::State& state) {
  const auto g = rw::make_graph("lattice:3");
  for (auto _ : state) {
    benchmark::DoNotOptimize(rw::range_observations_reference(*g, g->origin(), state.range(0), kSamples, 7));
  }
  state.SetItemsProcessed(state.iterations() * kSamples * state.range(0));
}

void lattice_generic_parallel(benchmark::State& state) {
  const auto g = rw::make_graph("lattice:3");
  rw::KernelOptions opt;
  opt.fast_path = false;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rw::range_observations(*g, g->origin(), state.range(0), kSamples, 7, opt));
  }
  state.SetItemsProcessed(state.iterations() * kSamples * state.range(0));
}

void lattice_packed_parallel(benchmark::State& state) {
  const auto g = rw::make_graph("lattice:3");
  for (auto _ : state) {
    benchmark::DoNotOptimize(rw::range_observations(*g, g->origin(), state.range(0), kSamples, 7));
  }
  state.SetItemsProcessed(state.iterations() * kSamples * state.range(0));
}

void stretched_reference(benchmark::State& state) {
  const auto g = rw::make_graph("stretched");
  for (auto _ : state) {
    benchmark::DoNotOptimize(rw::range_observations_reference(*g, g->origin(), state.range(0), kSamples, 7));
  }
  state.SetItemsProcessed(state.iterations() * kSamples * state.range(0));
}

void stretched_parallel(benchmark::State& state) {
  const auto g = rw::make_graph("stretched");
  for (auto _ : state) {
    benchmark::DoNotOptimize(rw::range_observations(*g, g->origin(), state.range(0), kSamples, 7));
  }
  state.SetItemsProcessed(state.iterations() * kSamples * state.range(0));
}

void escape_z3_packed(benchmark::State& state) {
  const auto g = rw::make_graph("lattice:3");
  for (auto _ : state) {
    benchmark::DoNotOptimize(rw::escape_probability(*g, g->origin(), state.range(0), kSamples, 7));
  }
}

}  // namespace

BENCHMARK(lattice_reference)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(lattice_generic_parallel)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(lattice_packed_parallel)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(stretched_reference)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(stretched_parallel)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(escape_z3_packed)->Arg(10000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
