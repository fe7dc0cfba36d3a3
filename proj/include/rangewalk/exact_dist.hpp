#pragma once

// Exact law of the range R_n by dynamic programming over (visited set,
// current vertex). Only feasible for small horizons; every pointwise
// inequality on the law of R_n can then be checked exactly.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rangewalk/graph.hpp"
#include "rangewalk/vertex_set.hpp"

namespace rangewalk {

class ExactLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

struct ExactOptions {
  /// 0 selects the default: 16 when degrees are <= 4, else 10.
  std::uint32_t horizon_limit = 0;
  std::size_t max_states = 8'000'000;
  /// Integer numerators over a common denominator L^n, L the lcm of the
  /// degrees met. Throws if L^n does not fit in 64 bits.
  bool exact_rational = false;
};

/// The ball B(o, n+1) with canonical local ids (id order = vertex order).
struct LocalBall {
  std::vector<VertexId> labels;
  std::vector<std::uint32_t> distance;
  std::vector<std::vector<std::uint32_t>> adjacency;  // filled for distance <= n
  std::uint32_t origin = 0;
};

class RangeDistribution {
 public:
  const GraphOracle& graph() const { return *graph_; }
  std::uint64_t horizon() const { return horizon_; }
  const VertexId& origin() const { return ball_->labels[ball_->origin]; }
  const LocalBall& ball() const { return *ball_; }

  std::size_t atom_count() const { return probability_.size(); }
  double probability(std::size_t atom) const { return probability_[atom]; }
  bool is_exact() const { return denominator_ != 0; }
  std::uint64_t exact_numerator(std::size_t atom) const { return numerator_.at(atom); }
  std::uint64_t exact_denominator() const { return denominator_; }
  std::span<const std::uint32_t> members(std::size_t atom) const;
  std::size_t range_size(std::size_t atom) const { return members(atom).size(); }
  std::size_t boundary_size(std::size_t atom) const { return boundary_[atom]; }
  VertexSet set(std::size_t atom) const;
  std::string encoding(std::size_t atom) const;
  /// P[R_n = A]; zero when A is not in the support.
  double probability_of(const VertexSet& a) const;
  double total_mass() const;

 private:
  friend RangeDistribution exact_range_distribution(const Graph& g, const VertexId& o, std::uint64_t n,
                                                    const ExactOptions& opt);
  Graph graph_;
  std::shared_ptr<const LocalBall> ball_;
  std::uint64_t horizon_ = 0;
  std::vector<std::uint32_t> offsets_{0};
  std::vector<std::uint32_t> pool_;
  std::vector<double> probability_;
  std::vector<std::uint64_t> numerator_;
  std::uint64_t denominator_ = 0;
  std::vector<std::uint32_t> boundary_;
};

RangeDistribution exact_range_distribution(const Graph& g, const VertexId& o, std::uint64_t n,
                                           const ExactOptions& opt = {});
std::uint32_t default_horizon_limit(const GraphOracle& g);

using Label = std::vector<std::int64_t>;

struct LabelClass {
  double probability = 0.0;
  std::size_t support = 0;  // atoms of the range law in this class
};

/// Marginal law of a function of R_n.
using LabeledDistribution = std::map<Label, LabelClass>;

LabeledDistribution label_distribution(const RangeDistribution& dist,
                                       const std::function<Label(std::size_t atom)>& label);

/// -sum p log p in nats (0 log 0 = 0).
double entropy(const RangeDistribution& dist);
double entropy(const LabeledDistribution& dist);

/// ent(R_n | label(R_n)) = ent(R_n) - ent(label), the label being a function of R_n.
double conditional_entropy(const RangeDistribution& dist, const std::function<Label(std::size_t atom)>& label);

/// Sum over classes of P[class] * log |support in class|.
double class_support_bound(const LabeledDistribution& dist);

double expected_range_size(const RangeDistribution& dist);
double expected_boundary_size(const RangeDistribution& dist);

/// max over the support of P[R_n=A] - (1-1/d)^(|boundary A|-1).
double check_pointwise_bound(const RangeDistribution& dist);

/// "set,size,boundary,probability" rows, atoms in canonical order.
std::string distribution_csv(const RangeDistribution& dist);

}  // namespace rangewalk
