#pragma once

// Sample-parallel walk kernels. Sample i always uses RNG stream
// first_stream + i, and per-sample results are stored by index, so every
// output is independent of the worker count.
//
// The *_reference functions are the serial generic route, kept so tests and
// benchmarks can compare against the OpenMP route (which also switches to a
// packed-coordinate kernel on Z^1..Z^3).

#include <cstdint>
#include <span>
#include <vector>

#include "rangewalk/graph.hpp"
#include "rangewalk/vertex_set.hpp"
#include "rangewalk/walker.hpp"

namespace rangewalk {

struct KernelOptions {
  int workers = 0;  // 0: OpenMP default
  bool boundary = true;
  bool fast_path = true;
  std::uint64_t first_stream = 0;
};

struct RangeObservation {
  std::uint64_t range_size = 0;
  std::uint64_t boundary_size = 0;

  friend bool operator==(const RangeObservation&, const RangeObservation&) = default;
};

std::vector<RangeObservation> range_observations(const GraphOracle& g, const VertexId& o, std::uint64_t n,
                                                 std::uint64_t samples, std::uint64_t seed,
                                                 const KernelOptions& opt = {});
std::vector<RangeObservation> range_observations_reference(const GraphOracle& g, const VertexId& o, std::uint64_t n,
                                                           std::uint64_t samples, std::uint64_t seed,
                                                           const KernelOptions& opt = {});

std::vector<HittingResult> hitting_observations(const GraphOracle& g, const VertexId& o,
                                                std::span<const VertexId> target, bool strict, std::uint64_t cap,
                                                std::uint64_t samples, std::uint64_t seed,
                                                const KernelOptions& opt = {});
std::vector<HittingResult> hitting_observations_reference(const GraphOracle& g, const VertexId& o,
                                                          std::span<const VertexId> target, bool strict,
                                                          std::uint64_t cap, std::uint64_t samples,
                                                          std::uint64_t seed, const KernelOptions& opt = {});

/// Full range sets, generic route, parallel over samples.
std::vector<VertexSet> sample_ranges(const GraphOracle& g, const VertexId& o, std::uint64_t n, std::uint64_t samples,
                                     std::uint64_t seed, const KernelOptions& opt = {});

/// True when the packed lattice kernel applies to (g, o, horizon).
bool lattice_fast_path_applies(const GraphOracle& g, const VertexId& o, std::uint64_t horizon);

int resolve_workers(int workers);

}  // namespace rangewalk
