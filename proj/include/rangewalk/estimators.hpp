#pragma once

// Monte Carlo estimates of range statistics, entropy and escape quantities.
// Every estimate keeps its sample count, seed and horizon; events at time
// infinity are censored at the horizon.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rangewalk/cover.hpp"
#include "rangewalk/graph.hpp"
#include "rangewalk/kernels.hpp"
#include "rangewalk/vertex_set.hpp"

namespace rangewalk {

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t count = 0;
  std::uint64_t seed = 0;
  std::uint64_t horizon = 0;
  double m2 = 0.0;  // sum of squared deviations, kept for merging

  static Estimate from_samples(std::span<const double> xs, std::uint64_t seed, std::uint64_t horizon);
  template <typename T>
  static Estimate from_values(const std::vector<T>& xs, std::uint64_t seed, std::uint64_t horizon) {
    std::vector<double> d(xs.begin(), xs.end());
    return from_samples(d, seed, horizon);
  }
  /// Known value with zero error (exact results in mixed tables).
  static Estimate exact(double value, std::uint64_t horizon);

  double variance() const { return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0; }
  /// |mean - value| <= sigmas * std_error (+ slack).
  bool within(double value, double sigmas = 3.0, double slack = 0.0) const;
};

/// Pooled estimate of two disjoint sample sets (Chan's update).
Estimate merge(const Estimate& a, const Estimate& b);
/// a / b with first-order error propagation (independent errors ignored
/// when both come from the same walks; documented as approximate).
Estimate ratio(const Estimate& a, const Estimate& b);

struct EntropyEstimate {
  double plugin = 0.0;
  double miller_madow = 0.0;  // plugin + (support - 1) / (2N)
  std::uint64_t support = 0;
  std::uint64_t samples = 0;
};

struct RangeMoments {
  Estimate range;
  Estimate boundary;
  std::optional<Estimate> k;  // present when a radius was given
  std::optional<Estimate> l;
  /// s_r, b_r: exact for vertex-transitive graphs, else the maximum over
  /// every center that appeared in the sampled covers.
  std::optional<CoverConstants> constants;
};

RangeMoments mc_moments(const GraphOracle& g, const VertexId& o, std::uint64_t n, std::uint64_t samples,
                        std::uint64_t seed, std::optional<std::uint32_t> r = std::nullopt,
                        const KernelOptions& opt = {});

/// Empirical entropy of the range over full canonical encodings.
EntropyEstimate plugin_entropy(const GraphOracle& g, const VertexId& o, std::uint64_t n, std::uint64_t samples,
                               std::uint64_t seed, const KernelOptions& opt = {});
EntropyEstimate plugin_entropy_of(std::vector<std::string> encodings);

/// (E|boundary| - 1) log(1 / (1 - 1/d)).
double boundary_entropy_lower_bound(double expected_boundary, int d);
/// E[K](log s_r + log 2) + E[L] b_r log 2 + 2 log(n+1).
double covering_entropy_upper_bound(double ek, double el, const CoverConstants& c, std::uint64_t n);

/// Fraction of walks from x with no return to x in steps 1..horizon.
Estimate escape_probability(const GraphOracle& g, const VertexId& x, std::uint64_t horizon, std::uint64_t samples,
                            std::uint64_t seed, const KernelOptions& opt = {});

/// Sum over x in A of deg(x) * P_x[no return to A within the horizon].
Estimate capacity_estimate(const GraphOracle& g, const VertexSet& a, std::uint64_t horizon, std::uint64_t samples,
                           std::uint64_t seed, const KernelOptions& opt = {});

struct ReturnProfile {
  std::vector<double> probability;  // index l: P_x[X_l = x]
  std::vector<double> std_error;    // zero when exact
  bool exact = true;
};

/// Exact by propagating the endpoint law over the explored region while it
/// stays below `max_states` vertices; Monte Carlo otherwise.
ReturnProfile return_probability_profile(const GraphOracle& g, const VertexId& x, std::uint32_t l_max,
                                         std::uint64_t samples = 100000, std::uint64_t seed = 1,
                                         std::size_t max_states = 4'000'000);

/// Probability that the next branch vertex other than x reached from the
/// branch vertex x is one level deeper. Throws GraphError if x is not a
/// branch vertex of a stretched tree at level >= 1.
Estimate stretched_tree_displacement(const GraphOracle& g, const VertexId& x, std::uint64_t samples,
                                     std::uint64_t seed);
/// 2 / (2 + (l+3)/(l+2)).
double stretched_displacement_formula(std::uint32_t level);

/// Simple random walk on Z from 1: probability of reaching r before 0.
Estimate gambler_escape(std::uint32_t r, std::uint64_t samples, std::uint64_t seed);

/// Concatenated trees: P_o[tau_{o_k} >= sqrt(a_k) - 1] from the first root.
Estimate concatenated_root_tail(const GraphOracle& g, std::uint32_t k, std::uint64_t samples, std::uint64_t seed,
                                const KernelOptions& opt = {});

}  // namespace rangewalk
