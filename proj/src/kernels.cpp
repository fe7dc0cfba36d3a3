#include "rangewalk/kernels.hpp"

#include <algorithm>
#include <cstdlib>

#include <absl/container/flat_hash_set.h>
#include <omp.h>

#include "rangewalk/families.hpp"
#include "rangewalk/rng.hpp"

namespace rangewalk {

namespace {

// Coordinates packed 21 bits each, biased so the key stays non-negative.
constexpr int kBits = 21;
constexpr std::int64_t kBias = std::int64_t{1} << (kBits - 1);
constexpr std::int64_t kReach = kBias - 2;

template <int D>
struct PackedLattice {
  std::array<std::uint64_t, 2 * D> step_add{};
  std::array<std::uint64_t, 2 * D> step_sub{};

  PackedLattice() {
    // Same order as LatticeGraph: -e_0..-e_{D-1}, +e_{D-1}..+e_0.
    for (int j = 0; j < 2 * D; ++j) {
      const int axis = j < D ? j : 2 * D - 1 - j;
      const std::uint64_t unit = std::uint64_t{1} << (kBits * axis);
      step_add[j] = j < D ? 0 : unit;
      step_sub[j] = j < D ? unit : 0;
    }
  }

  static std::uint64_t pack(const LatticePoint& p) {
    std::uint64_t key = 0;
    for (int i = 0; i < D; ++i) key |= static_cast<std::uint64_t>(p.x[i] + kBias) << (kBits * i);
    return key;
  }

  std::uint64_t step(std::uint64_t key, std::uint32_t j) const { return key + step_add[j] - step_sub[j]; }
};

template <int D>
RangeObservation lattice_range(const PackedLattice<D>& lat, std::uint64_t start, std::uint64_t n, bool boundary,
                               StreamRng& rng, absl::flat_hash_set<std::uint64_t>& seen) {
  seen.clear();
  std::uint64_t key = start;
  seen.insert(key);
  for (std::uint64_t t = 0; t < n; ++t) {
    key = lat.step(key, rng.below(2 * D));
    seen.insert(key);
  }
  RangeObservation obs{seen.size(), 0};
  if (boundary) {
    for (auto v : seen) {
      for (std::uint32_t j = 0; j < 2 * D; ++j) {
        if (!seen.contains(lat.step(v, j))) {
          ++obs.boundary_size;
          break;
        }
      }
    }
  }
  return obs;
}

template <int D>
HittingResult lattice_hit(const PackedLattice<D>& lat, std::uint64_t start, std::span<const std::uint64_t> targets,
                          bool strict, std::uint64_t cap, StreamRng& rng) {
  auto in_target = [&](std::uint64_t k) {
    if (targets.size() <= 8) return std::find(targets.begin(), targets.end(), k) != targets.end();
    return std::binary_search(targets.begin(), targets.end(), k);
  };
  HittingResult result{std::nullopt, cap};
  std::uint64_t key = start;
  if (!strict && in_target(key)) {
    result.time = 0;
    return result;
  }
  if (targets.size() == 1) {
    const auto goal = targets[0];
    for (std::uint64_t t = 1; t <= cap; ++t) {
      key = lat.step(key, rng.below(2 * D));
      if (key == goal) {
        result.time = t;
        return result;
      }
    }
    return result;
  }
  for (std::uint64_t t = 1; t <= cap; ++t) {
    key = lat.step(key, rng.below(2 * D));
    if (in_target(key)) {
      result.time = t;
      return result;
    }
  }
  return result;
}

const LatticeGraph* fast_lattice(const GraphOracle& g) {
  const auto* lat = dynamic_cast<const LatticeGraph*>(&g);
  return lat != nullptr && lat->dimension() <= 3 ? lat : nullptr;
}

bool within_reach(const LatticePoint& p, std::uint64_t horizon) {
  for (auto c : p.x) {
    if (static_cast<std::uint64_t>(std::abs(static_cast<std::int64_t>(c))) + horizon >=
        static_cast<std::uint64_t>(kReach)) {
      return false;
    }
  }
  return true;
}

template <int D>
std::vector<RangeObservation> lattice_range_samples(const LatticePoint& o, std::uint64_t n, std::uint64_t samples,
                                                    std::uint64_t seed, const KernelOptions& opt) {
  std::vector<RangeObservation> out(samples);
  const PackedLattice<D> lat;
  const auto start = PackedLattice<D>::pack(o);
  const auto count = static_cast<std::int64_t>(samples);
#pragma omp parallel num_threads(resolve_workers(opt.workers))
  {
    absl::flat_hash_set<std::uint64_t> seen;
    seen.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(n + 1, 1U << 22)));
#pragma omp for schedule(dynamic, 4)
    for (std::int64_t s = 0; s < count; ++s) {
      StreamRng rng(seed, opt.first_stream + static_cast<std::uint64_t>(s));
      out[static_cast<std::size_t>(s)] = lattice_range<D>(lat, start, n, opt.boundary, rng, seen);
    }
  }
  return out;
}

template <int D>
std::vector<HittingResult> lattice_hit_samples(const LatticePoint& o, std::span<const VertexId> target, bool strict,
                                               std::uint64_t cap, std::uint64_t samples, std::uint64_t seed,
                                               const KernelOptions& opt) {
  std::vector<HittingResult> out(samples);
  const PackedLattice<D> lat;
  const auto start = PackedLattice<D>::pack(o);
  std::vector<std::uint64_t> keys;
  for (const auto& v : target) keys.push_back(PackedLattice<D>::pack(std::get<LatticePoint>(v)));
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  const auto count = static_cast<std::int64_t>(samples);
#pragma omp parallel for schedule(dynamic, 16) num_threads(resolve_workers(opt.workers))
  for (std::int64_t s = 0; s < count; ++s) {
    StreamRng rng(seed, opt.first_stream + static_cast<std::uint64_t>(s));
    out[static_cast<std::size_t>(s)] = lattice_hit<D>(lat, start, keys, strict, cap, rng);
  }
  return out;
}

bool targets_within_reach(std::span<const VertexId> target, std::uint64_t horizon) {
  return std::all_of(target.begin(), target.end(), [&](const VertexId& v) {
    const auto* p = std::get_if<LatticePoint>(&v);
    return p != nullptr && within_reach(*p, horizon);
  });
}

}  // namespace

int resolve_workers(int workers) { return workers > 0 ? workers : omp_get_max_threads(); }

bool lattice_fast_path_applies(const GraphOracle& g, const VertexId& o, std::uint64_t horizon) {
  const auto* p = std::get_if<LatticePoint>(&o);
  return fast_lattice(g) != nullptr && p != nullptr && within_reach(*p, horizon);
}

std::vector<RangeObservation> range_observations(const GraphOracle& g, const VertexId& o, std::uint64_t n,
                                                 std::uint64_t samples, std::uint64_t seed,
                                                 const KernelOptions& opt) {
  if (opt.fast_path && lattice_fast_path_applies(g, o, n)) {
    const auto& p = std::get<LatticePoint>(o);
    switch (fast_lattice(g)->dimension()) {
      case 1:
        return lattice_range_samples<1>(p, n, samples, seed, opt);
      case 2:
        return lattice_range_samples<2>(p, n, samples, seed, opt);
      default:
        return lattice_range_samples<3>(p, n, samples, seed, opt);
    }
  }
  std::vector<RangeObservation> out(samples);
  const auto count = static_cast<std::int64_t>(samples);
#pragma omp parallel num_threads(resolve_workers(opt.workers))
  {
    Walker walker(g);
#pragma omp for schedule(dynamic, 4)
    for (std::int64_t s = 0; s < count; ++s) {
      StreamRng rng(seed, opt.first_stream + static_cast<std::uint64_t>(s));
      walker.run(o, n, rng);
      out[static_cast<std::size_t>(s)] = {walker.range_size(), opt.boundary ? walker.boundary_size() : 0};
    }
  }
  return out;
}

std::vector<RangeObservation> range_observations_reference(const GraphOracle& g, const VertexId& o, std::uint64_t n,
                                                           std::uint64_t samples, std::uint64_t seed,
                                                           const KernelOptions& opt) {
  std::vector<RangeObservation> out;
  out.reserve(samples);
  Walker walker(g);
  for (std::uint64_t s = 0; s < samples; ++s) {
    StreamRng rng(seed, opt.first_stream + s);
    walker.run(o, n, rng);
    out.push_back({walker.range_size(), opt.boundary ? walker.boundary_size() : 0});
  }
  return out;
}

std::vector<HittingResult> hitting_observations(const GraphOracle& g, const VertexId& o,
                                                std::span<const VertexId> target, bool strict, std::uint64_t cap,
                                                std::uint64_t samples, std::uint64_t seed,
                                                const KernelOptions& opt) {
  if (opt.fast_path && lattice_fast_path_applies(g, o, cap) && targets_within_reach(target, cap)) {
    const auto& p = std::get<LatticePoint>(o);
    switch (fast_lattice(g)->dimension()) {
      case 1:
        return lattice_hit_samples<1>(p, target, strict, cap, samples, seed, opt);
      case 2:
        return lattice_hit_samples<2>(p, target, strict, cap, samples, seed, opt);
      default:
        return lattice_hit_samples<3>(p, target, strict, cap, samples, seed, opt);
    }
  }
  std::vector<HittingResult> out(samples);
  const auto count = static_cast<std::int64_t>(samples);
#pragma omp parallel num_threads(resolve_workers(opt.workers))
  {
    Walker walker(g);
#pragma omp for schedule(dynamic, 16)
    for (std::int64_t s = 0; s < count; ++s) {
      StreamRng rng(seed, opt.first_stream + static_cast<std::uint64_t>(s));
      out[static_cast<std::size_t>(s)] = walker.hit(o, target, strict, cap, rng);
    }
  }
  return out;
}

std::vector<HittingResult> hitting_observations_reference(const GraphOracle& g, const VertexId& o,
                                                          std::span<const VertexId> target, bool strict,
                                                          std::uint64_t cap, std::uint64_t samples,
                                                          std::uint64_t seed, const KernelOptions& opt) {
  std::vector<HittingResult> out;
  out.reserve(samples);
  Walker walker(g);
  for (std::uint64_t s = 0; s < samples; ++s) {
    StreamRng rng(seed, opt.first_stream + s);
    out.push_back(walker.hit(o, target, strict, cap, rng));
  }
  return out;
}

std::vector<VertexSet> sample_ranges(const GraphOracle& g, const VertexId& o, std::uint64_t n, std::uint64_t samples,
                                     std::uint64_t seed, const KernelOptions& opt) {
  std::vector<VertexSet> out(samples);
  const auto count = static_cast<std::int64_t>(samples);
#pragma omp parallel num_threads(resolve_workers(opt.workers))
  {
    Walker walker(g);
#pragma omp for schedule(dynamic, 16)
    for (std::int64_t s = 0; s < count; ++s) {
      StreamRng rng(seed, opt.first_stream + static_cast<std::uint64_t>(s));
      walker.run(o, n, rng);
      out[static_cast<std::size_t>(s)] = walker.range();
    }
  }
  return out;
}

}  // namespace rangewalk
