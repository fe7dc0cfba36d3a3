#include "rangewalk/exact_dist.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <absl/container/flat_hash_map.h>
#include <absl/hash/hash.h>

namespace rangewalk {

namespace {

constexpr std::uint32_t kMaxExactHorizon = 16;
constexpr std::uint32_t kNoEndpoint = 0xffffffffU;

struct StateKey {
  std::array<std::uint32_t, kMaxExactHorizon + 1> members{};
  std::uint32_t endpoint = kNoEndpoint;
  std::uint8_t size = 0;

  std::span<const std::uint32_t> view() const { return {members.data(), size}; }

  friend bool operator==(const StateKey& a, const StateKey& b) {
    return a.size == b.size && a.endpoint == b.endpoint &&
           std::equal(a.members.begin(), a.members.begin() + a.size, b.members.begin());
  }

  template <typename H>
  friend H AbslHashValue(H h, const StateKey& k) {
    return H::combine(H::combine_contiguous(std::move(h), k.members.data(), k.size), k.size, k.endpoint);
  }

  StateKey with(std::uint32_t id) const {
    StateKey k = *this;
    k.endpoint = id;
    auto* end = k.members.begin() + k.size;
    auto* pos = std::lower_bound(k.members.begin(), end, id);
    if (pos != end && *pos == id) return k;
    std::copy_backward(pos, end, end + 1);
    *pos = id;
    ++k.size;
    return k;
  }
};

std::shared_ptr<LocalBall> build_ball(const GraphOracle& g, const VertexId& o, std::uint64_t n) {
  absl::flat_hash_map<VertexId, std::uint32_t, VertexHash> index;
  std::vector<VertexId> labels{o};
  std::vector<std::uint32_t> dist{0};
  index.emplace(o, 0);
  std::vector<VertexId> nbrs;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (dist[i] > n) continue;
    g.neighbors(labels[i], nbrs);
    for (const auto& y : nbrs) {
      if (index.try_emplace(y, static_cast<std::uint32_t>(labels.size())).second) {
        labels.push_back(y);
        dist.push_back(dist[i] + 1);
      }
    }
  }
  // Renumber so that local id order is the canonical vertex order.
  std::vector<std::uint32_t> order(labels.size());
  std::iota(order.begin(), order.end(), 0U);
  std::sort(order.begin(), order.end(),
            [&](std::uint32_t a, std::uint32_t b) { return compare_vertices(labels[a], labels[b]) < 0; });
  std::vector<std::uint32_t> rank(labels.size());
  for (std::uint32_t r = 0; r < order.size(); ++r) rank[order[r]] = r;

  auto ball = std::make_shared<LocalBall>();
  ball->labels.resize(labels.size());
  ball->distance.resize(labels.size());
  ball->adjacency.resize(labels.size());
  for (std::uint32_t i = 0; i < labels.size(); ++i) {
    ball->labels[rank[i]] = labels[i];
    ball->distance[rank[i]] = dist[i];
  }
  for (std::uint32_t id = 0; id < ball->labels.size(); ++id) {
    if (ball->distance[id] > n) continue;
    g.neighbors(ball->labels[id], nbrs);
    auto& adj = ball->adjacency[id];
    for (const auto& y : nbrs) adj.push_back(rank[index.at(y)]);
  }
  ball->origin = rank[0];
  return ball;
}

template <typename Mass>
using StateMap = absl::flat_hash_map<StateKey, Mass>;

template <typename Mass>
StateMap<Mass> run_dp(const LocalBall& ball, std::uint64_t n, std::uint64_t lcm, std::size_t max_states) {
  StateMap<Mass> cur, next;
  StateKey start;
  start.members[0] = ball.origin;
  start.size = 1;
  start.endpoint = ball.origin;
  cur.emplace(start, Mass{1});
  for (std::uint64_t t = 0; t < n; ++t) {
    next.clear();
    next.reserve(std::min(cur.size() * 2, max_states + 1));
    for (const auto& [key, mass] : cur) {
      const auto& adj = ball.adjacency[key.endpoint];
      Mass share;
      if constexpr (std::is_floating_point_v<Mass>) {
        share = mass / static_cast<double>(adj.size());
      } else {
        share = mass * (lcm / adj.size());
      }
      for (auto y : adj) next[key.with(y)] += share;
      // checked inside the sweep so the map never outgrows the guard
      if (next.size() > max_states) {
        throw ExactLimitError("exact distribution exceeded " + std::to_string(max_states) + " states at step " +
                              std::to_string(t + 1));
      }
    }
    cur.swap(next);
  }
  StateMap<Mass> marginal;
  for (const auto& [key, mass] : cur) {
    StateKey k = key;
    k.endpoint = kNoEndpoint;
    marginal[k] += mass;
  }
  return marginal;
}

std::uint64_t checked_power(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (r > UINT64_MAX / base) throw ExactLimitError("exact denominator overflows 64 bits");
    r *= base;
  }
  return r;
}

}  // namespace

std::uint32_t default_horizon_limit(const GraphOracle& g) { return g.degree_bound() <= 4 ? 16 : 10; }

RangeDistribution exact_range_distribution(const Graph& g, const VertexId& o, std::uint64_t n,
                                           const ExactOptions& opt) {
  const std::uint32_t limit =
      std::min(kMaxExactHorizon, opt.horizon_limit ? opt.horizon_limit : default_horizon_limit(*g));
  if (n > limit) {
    throw ExactLimitError("horizon " + std::to_string(n) + " exceeds the exact limit " + std::to_string(limit));
  }
  if (!g->contains(o)) throw GraphError("origin is not a vertex of " + g->name());

  RangeDistribution dist;
  dist.graph_ = g;
  dist.horizon_ = n;
  auto ball = build_ball(*g, o, n);
  dist.ball_ = ball;

  std::vector<std::pair<StateKey, double>> atoms;
  std::vector<std::uint64_t> numerators;
  if (opt.exact_rational) {
    std::uint64_t lcm = 1;
    for (std::uint32_t id = 0; id < ball->labels.size(); ++id) {
      if (ball->distance[id] < n) lcm = std::lcm(lcm, static_cast<std::uint64_t>(ball->adjacency[id].size()));
    }
    dist.denominator_ = checked_power(lcm, n);
    auto marginal = run_dp<std::uint64_t>(*ball, n, lcm, opt.max_states);
    for (const auto& [k, num] : marginal) {
      atoms.emplace_back(k, static_cast<double>(num) / static_cast<double>(dist.denominator_));
    }
    std::sort(atoms.begin(), atoms.end(), [](const auto& a, const auto& b) {
      if (a.first.size != b.first.size) return a.first.size < b.first.size;
      return std::lexicographical_compare(a.first.view().begin(), a.first.view().end(), b.first.view().begin(),
                                          b.first.view().end());
    });
    for (const auto& [k, p] : atoms) numerators.push_back(marginal.at(k));
  } else {
    auto marginal = run_dp<double>(*ball, n, 1, opt.max_states);
    atoms.assign(marginal.begin(), marginal.end());
    std::sort(atoms.begin(), atoms.end(), [](const auto& a, const auto& b) {
      if (a.first.size != b.first.size) return a.first.size < b.first.size;
      return std::lexicographical_compare(a.first.view().begin(), a.first.view().end(), b.first.view().begin(),
                                          b.first.view().end());
    });
  }

  dist.numerator_ = std::move(numerators);
  dist.probability_.reserve(atoms.size());
  dist.boundary_.reserve(atoms.size());
  for (const auto& [key, p] : atoms) {
    const auto members = key.view();
    dist.pool_.insert(dist.pool_.end(), members.begin(), members.end());
    dist.offsets_.push_back(static_cast<std::uint32_t>(dist.pool_.size()));
    dist.probability_.push_back(p);
    std::uint32_t boundary = 0;
    for (auto v : members) {
      const auto& adj = ball->adjacency[v];
      if (std::any_of(adj.begin(), adj.end(),
                      [&](std::uint32_t y) { return !std::binary_search(members.begin(), members.end(), y); })) {
        ++boundary;
      }
    }
    dist.boundary_.push_back(boundary);
  }
  return dist;
}

std::span<const std::uint32_t> RangeDistribution::members(std::size_t atom) const {
  return {pool_.data() + offsets_[atom], offsets_[atom + 1] - offsets_[atom]};
}

VertexSet RangeDistribution::set(std::size_t atom) const {
  std::vector<VertexId> items;
  for (auto id : members(atom)) items.push_back(ball_->labels[id]);
  return VertexSet::from_sorted_unique(std::move(items));
}

std::string RangeDistribution::encoding(std::size_t atom) const { return set(atom).encode(*graph_); }

double RangeDistribution::probability_of(const VertexSet& a) const {
  std::vector<std::uint32_t> ids;
  for (const auto& v : a) {
    auto it = std::lower_bound(ball_->labels.begin(), ball_->labels.end(), v, VertexLess{});
    if (it == ball_->labels.end() || compare_vertices(*it, v) != 0) return 0.0;
    ids.push_back(static_cast<std::uint32_t>(it - ball_->labels.begin()));
  }
  for (std::size_t i = 0; i < atom_count(); ++i) {
    const auto m = members(i);
    if (std::equal(m.begin(), m.end(), ids.begin(), ids.end())) return probability_[i];
  }
  return 0.0;
}

double RangeDistribution::total_mass() const {
  return std::accumulate(probability_.begin(), probability_.end(), 0.0);
}

LabeledDistribution label_distribution(const RangeDistribution& dist,
                                       const std::function<Label(std::size_t atom)>& label) {
  LabeledDistribution out;
  for (std::size_t i = 0; i < dist.atom_count(); ++i) {
    auto& cls = out[label(i)];
    cls.probability += dist.probability(i);
    ++cls.support;
  }
  return out;
}

namespace {
double plogp_sum(double acc, double p) { return p > 0.0 ? acc - p * std::log(p) : acc; }
}  // namespace

double entropy(const RangeDistribution& dist) {
  double h = 0.0;
  for (std::size_t i = 0; i < dist.atom_count(); ++i) h = plogp_sum(h, dist.probability(i));
  return h;
}

double entropy(const LabeledDistribution& dist) {
  double h = 0.0;
  for (const auto& [label, cls] : dist) h = plogp_sum(h, cls.probability);
  return h;
}

double conditional_entropy(const RangeDistribution& dist, const std::function<Label(std::size_t atom)>& label) {
  return entropy(dist) - entropy(label_distribution(dist, label));
}

double class_support_bound(const LabeledDistribution& dist) {
  double b = 0.0;
  for (const auto& [label, cls] : dist) b += cls.probability * std::log(static_cast<double>(cls.support));
  return b;
}

double expected_range_size(const RangeDistribution& dist) {
  double e = 0.0;
  for (std::size_t i = 0; i < dist.atom_count(); ++i) e += dist.probability(i) * static_cast<double>(dist.range_size(i));
  return e;
}

double expected_boundary_size(const RangeDistribution& dist) {
  double e = 0.0;
  for (std::size_t i = 0; i < dist.atom_count(); ++i) {
    e += dist.probability(i) * static_cast<double>(dist.boundary_size(i));
  }
  return e;
}

double check_pointwise_bound(const RangeDistribution& dist) {
  const double keep = 1.0 - 1.0 / static_cast<double>(dist.graph().degree_bound());
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < dist.atom_count(); ++i) {
    const double bound = std::pow(keep, static_cast<double>(dist.boundary_size(i)) - 1.0);
    worst = std::max(worst, dist.probability(i) - bound);
  }
  return worst;
}

std::string distribution_csv(const RangeDistribution& dist) {
  std::ostringstream os;
  os.precision(17);
  os << "set,size,boundary,probability\n";
  for (std::size_t i = 0; i < dist.atom_count(); ++i) {
    os << to_hex(dist.encoding(i)) << ',' << dist.range_size(i) << ',' << dist.boundary_size(i) << ','
       << dist.probability(i) << '\n';
  }
  return os.str();
}

}  // namespace rangewalk
