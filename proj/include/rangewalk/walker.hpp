#pragma once

// Seeded simple random walk on any GraphOracle. This is the generic engine:
// every family goes through it, and the lattice fast kernels are tested
// against it step for step.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <absl/container/flat_hash_map.h>

#include "rangewalk/graph.hpp"
#include "rangewalk/rng.hpp"
#include "rangewalk/vertex_set.hpp"

namespace rangewalk {

struct WalkConfig {
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

struct WalkSample {
  std::vector<VertexId> path;  // X_0 .. X_n
  VertexSet range;
  std::size_t boundary_size = 0;
};

struct HittingResult {
  std::optional<std::uint64_t> time;  // empty: not hit within cap
  std::uint64_t cap = 0;

  bool hit() const { return time.has_value(); }
};

/// The part of an infinite graph discovered so far, with dense local ids.
/// Neighbor lists are materialized when a vertex is first expanded.
class ExploredRegion {
 public:
  explicit ExploredRegion(const GraphOracle& g) : g_(&g) {}

  const GraphOracle& graph() const { return *g_; }
  std::uint32_t intern(const VertexId& v);
  std::optional<std::uint32_t> find(const VertexId& v) const;
  std::span<const std::uint32_t> neighbors(std::uint32_t id);
  const VertexId& label(std::uint32_t id) const { return labels_[id]; }
  std::size_t size() const { return labels_.size(); }
  void clear();

 private:
  static constexpr std::uint32_t kUnexpanded = 0xffffffffU;
  struct Node {
    std::uint32_t begin = kUnexpanded;
    std::uint32_t count = 0;
  };

  const GraphOracle* g_;
  std::vector<VertexId> labels_;
  std::vector<Node> nodes_;
  std::vector<std::uint32_t> adjacency_;
  absl::flat_hash_map<VertexId, std::uint32_t, VertexHash> index_;
  std::vector<VertexId> scratch_;
};

/// Reusable walk engine. One per thread; reset between samples is cheap.
class Walker {
 public:
  explicit Walker(const GraphOracle& g) : region_(g) {}

  /// Runs n steps from `start`; optionally records the local-id path.
  void run(const VertexId& start, std::uint64_t n, StreamRng& rng, std::vector<std::uint32_t>* path = nullptr);

  std::uint64_t range_size() const { return visited_.size(); }
  std::uint64_t boundary_size();
  VertexSet range() const;
  std::uint64_t visits_to(const VertexId& x) const;

  /// First time in `target` (strict: first positive time), censored at cap.
  HittingResult hit(const VertexId& start, std::span<const VertexId> target, bool strict, std::uint64_t cap,
                    StreamRng& rng);

  ExploredRegion& region() { return region_; }

 private:
  void reset();
  void mark(std::uint32_t id);

  ExploredRegion region_;
  std::vector<std::uint32_t> visited_;      // local ids in first-visit order
  std::vector<std::uint32_t> visit_count_;  // indexed by local id
};

WalkSample run_walk(const GraphOracle& g, const VertexId& o, const WalkConfig& cfg);

HittingResult hitting_time(const GraphOracle& g, const VertexId& o, const VertexSet& target, bool strict,
                           std::uint64_t cap, const WalkConfig& cfg);

/// Number of visits to x during steps 0..n, one entry per sample; sample i
/// uses stream cfg.stream + i.
std::vector<std::uint64_t> visit_count_profile(const GraphOracle& g, const VertexId& o, const VertexId& x,
                                               const WalkConfig& cfg, std::uint64_t samples);

/// Debug trace: "step,vertex" CSV rows with hex vertex encodings.
std::string trace_csv(const GraphOracle& g, const WalkSample& sample);

}  // namespace rangewalk
