#include "rangewalk/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <absl/container/flat_hash_map.h>

#include "rangewalk/families.hpp"
#include "rangewalk/probes.hpp"
#include "rangewalk/rng.hpp"
#include "rangewalk/walker.hpp"

namespace rangewalk {

namespace {

// Samples are drawn in chunks so full range sets never pile up in memory.
constexpr std::uint64_t kChunk = 4096;

template <typename F>
void for_each_chunk(std::uint64_t samples, const KernelOptions& opt, F&& body) {
  for (std::uint64_t begin = 0; begin < samples; begin += kChunk) {
    KernelOptions chunk = opt;
    chunk.first_stream = opt.first_stream + begin;
    body(begin, std::min(kChunk, samples - begin), chunk);
  }
}

std::vector<double> indicators(const std::vector<HittingResult>& hits, bool want_hit) {
  std::vector<double> xs;
  xs.reserve(hits.size());
  for (const auto& h : hits) xs.push_back(h.hit() == want_hit ? 1.0 : 0.0);
  return xs;
}

}  // namespace

Estimate Estimate::from_samples(std::span<const double> xs, std::uint64_t seed, std::uint64_t horizon) {
  Estimate e;
  e.seed = seed;
  e.horizon = horizon;
  e.count = xs.size();
  if (xs.empty()) return e;
  e.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  for (double x : xs) e.m2 += (x - e.mean) * (x - e.mean);
  e.std_error = std::sqrt(e.variance() / static_cast<double>(e.count));
  return e;
}

Estimate Estimate::exact(double value, std::uint64_t horizon) {
  Estimate e;
  e.mean = value;
  e.horizon = horizon;
  return e;
}

bool Estimate::within(double value, double sigmas, double slack) const {
  return std::abs(mean - value) <= sigmas * std_error + slack;
}

Estimate merge(const Estimate& a, const Estimate& b) {
  if (a.count == 0) return b;
  if (b.count == 0) return a;
  Estimate e = a;
  const auto na = static_cast<double>(a.count);
  const auto nb = static_cast<double>(b.count);
  const double n = na + nb;
  const double delta = b.mean - a.mean;
  e.count = a.count + b.count;
  e.mean = a.mean + delta * nb / n;
  e.m2 = a.m2 + b.m2 + delta * delta * na * nb / n;
  e.std_error = std::sqrt(e.variance() / n);
  return e;
}

Estimate ratio(const Estimate& a, const Estimate& b) {
  Estimate e = a;
  e.mean = b.mean != 0.0 ? a.mean / b.mean : 0.0;
  const double ra = a.mean != 0.0 ? a.std_error / a.mean : 0.0;
  const double rb = b.mean != 0.0 ? b.std_error / b.mean : 0.0;
  e.std_error = std::abs(e.mean) * std::sqrt(ra * ra + rb * rb);
  e.m2 = 0.0;
  return e;
}

RangeMoments mc_moments(const GraphOracle& g, const VertexId& o, std::uint64_t n, std::uint64_t samples,
                        std::uint64_t seed, std::optional<std::uint32_t> r, const KernelOptions& opt) {
  RangeMoments m;
  if (!r) {
    const auto obs = range_observations(g, o, n, samples, seed, opt);
    std::vector<double> range, boundary;
    for (const auto& x : obs) {
      range.push_back(static_cast<double>(x.range_size));
      boundary.push_back(static_cast<double>(x.boundary_size));
    }
    m.range = Estimate::from_samples(range, seed, n);
    m.boundary = Estimate::from_samples(boundary, seed, n);
    return m;
  }
  std::vector<double> range(samples), boundary(samples), ks(samples), ls(samples);
  const bool transitive = g.vertex_transitive();
  std::vector<CoverConstants> consts(transitive ? 0 : samples);
  for_each_chunk(samples, opt, [&](std::uint64_t begin, std::uint64_t count, const KernelOptions& chunk) {
    const auto sets = sample_ranges(g, o, n, count, seed, chunk);
    const auto total = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 16) num_threads(resolve_workers(opt.workers))
    for (std::int64_t i = 0; i < total; ++i) {
      const auto& a = sets[static_cast<std::size_t>(i)];
      const auto seq = f_r(g, a, o, *r);
      const auto at = begin + static_cast<std::uint64_t>(i);
      range[at] = static_cast<double>(a.size());
      boundary[at] = static_cast<double>(interior_boundary_size(g, a));
      ks[at] = static_cast<double>(seq.k());
      ls[at] = static_cast<double>(seq.l());
      if (!transitive) consts[at] = cover_constants(g, *r, seq.centers);
    }
  });
  m.range = Estimate::from_samples(range, seed, n);
  m.boundary = Estimate::from_samples(boundary, seed, n);
  m.k = Estimate::from_samples(ks, seed, n);
  m.l = Estimate::from_samples(ls, seed, n);
  if (transitive) {
    m.constants = cover_constants(g, *r, {});
  } else {
    CoverConstants c;
    for (const auto& x : consts) {
      c.s_r = std::max(c.s_r, x.s_r);
      c.b_r = std::max(c.b_r, x.b_r);
    }
    m.constants = c;
  }
  return m;
}

EntropyEstimate plugin_entropy_of(std::vector<std::string> encodings) {
  EntropyEstimate e;
  e.samples = encodings.size();
  if (encodings.empty()) return e;
  // Full byte strings are compared; no digest, so no collisions.
  absl::flat_hash_map<std::string, std::uint64_t> freq;
  for (auto& s : encodings) ++freq[std::move(s)];
  std::vector<std::uint64_t> counts;
  counts.reserve(freq.size());
  for (const auto& [key, c] : freq) counts.push_back(c);
  // Hash iteration order varies between processes; sum in a fixed order.
  std::sort(counts.begin(), counts.end());
  const auto total = static_cast<double>(e.samples);
  for (auto c : counts) {
    const double p = static_cast<double>(c) / total;
    e.plugin -= p * std::log(p);
  }
  e.support = counts.size();
  e.miller_madow = e.plugin + static_cast<double>(e.support - 1) / (2.0 * total);
  return e;
}

EntropyEstimate plugin_entropy(const GraphOracle& g, const VertexId& o, std::uint64_t n, std::uint64_t samples,
                               std::uint64_t seed, const KernelOptions& opt) {
  std::vector<std::string> encodings;
  encodings.reserve(samples);
  for_each_chunk(samples, opt, [&](std::uint64_t, std::uint64_t count, const KernelOptions& chunk) {
    for (const auto& a : sample_ranges(g, o, n, count, seed, chunk)) encodings.push_back(a.encode(g));
  });
  return plugin_entropy_of(std::move(encodings));
}

double boundary_entropy_lower_bound(double expected_boundary, int d) {
  return (expected_boundary - 1.0) * std::log(1.0 / (1.0 - 1.0 / static_cast<double>(d)));
}

double covering_entropy_upper_bound(double ek, double el, const CoverConstants& c, std::uint64_t n) {
  return code_length_bound(ek, el, c) + 2.0 * std::log(static_cast<double>(n) + 1.0);
}

Estimate escape_probability(const GraphOracle& g, const VertexId& x, std::uint64_t horizon, std::uint64_t samples,
                            std::uint64_t seed, const KernelOptions& opt) {
  const std::vector<VertexId> target{x};
  const auto hits = hitting_observations(g, x, target, true, horizon, samples, seed, opt);
  return Estimate::from_samples(indicators(hits, false), seed, horizon);
}

Estimate capacity_estimate(const GraphOracle& g, const VertexSet& a, std::uint64_t horizon, std::uint64_t samples,
                           std::uint64_t seed, const KernelOptions& opt) {
  Estimate total;
  total.seed = seed;
  total.horizon = horizon;
  total.count = samples;
  double var = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    KernelOptions o = opt;
    o.first_stream = opt.first_stream + i * samples;
    const auto hits = hitting_observations(g, a[i], a.items(), true, horizon, samples, seed, o);
    const auto esc = Estimate::from_samples(indicators(hits, false), seed, horizon);
    const double deg = g.degree(a[i]);
    total.mean += deg * esc.mean;
    var += deg * deg * esc.std_error * esc.std_error;
  }
  total.std_error = std::sqrt(var);
  return total;
}

ReturnProfile return_probability_profile(const GraphOracle& g, const VertexId& x, std::uint32_t l_max,
                                         std::uint64_t samples, std::uint64_t seed, std::size_t max_states) {
  ReturnProfile prof;
  {
    ExploredRegion region(g);
    const auto home = region.intern(x);
    std::vector<double> cur{1.0}, next;
    prof.probability.push_back(1.0);
    bool ok = true;
    for (std::uint32_t l = 1; l <= l_max && ok; ++l) {
      next.assign(region.size(), 0.0);
      for (std::uint32_t id = 0; id < cur.size(); ++id) {
        if (cur[id] == 0.0) continue;
        const auto nbrs = region.neighbors(id);
        if (region.size() > max_states) {
          ok = false;
          break;
        }
        if (next.size() < region.size()) next.resize(region.size(), 0.0);
        const double share = cur[id] / static_cast<double>(nbrs.size());
        for (auto y : nbrs) next[y] += share;
      }
      cur.swap(next);
      if (ok) prof.probability.push_back(cur[home]);
    }
    if (ok) {
      prof.std_error.assign(prof.probability.size(), 0.0);
      return prof;
    }
  }
  prof = ReturnProfile{};
  prof.exact = false;
  std::vector<std::uint64_t> returns(l_max + 1, 0);
  Walker walker(g);
  std::vector<std::uint32_t> path;
  for (std::uint64_t s = 0; s < samples; ++s) {
    StreamRng rng(seed, s);
    walker.run(x, l_max, rng, &path);
    for (std::size_t l = 0; l < path.size(); ++l) returns[l] += path[l] == path[0] ? 1 : 0;
  }
  const auto total = static_cast<double>(samples);
  for (auto c : returns) {
    const double p = static_cast<double>(c) / total;
    prof.probability.push_back(p);
    prof.std_error.push_back(std::sqrt(p * (1.0 - p) / total));
  }
  return prof;
}

Estimate stretched_tree_displacement(const GraphOracle& g, const VertexId& x, std::uint64_t samples,
                                     std::uint64_t seed) {
  if (dynamic_cast<const StretchedTreeGraph*>(&g) == nullptr) throw GraphError("displacement needs a stretched tree");
  if (!StretchedTreeGraph::is_branch(x)) throw GraphError("displacement start is not a branch vertex");
  const auto level = StretchedTreeGraph::branch_level(x);
  if (level < 1) throw GraphError("displacement start must be at level >= 1");
  std::vector<double> deeper;
  deeper.reserve(samples);
  std::vector<VertexId> nbrs;
  for (std::uint64_t s = 0; s < samples; ++s) {
    StreamRng rng(seed, s);
    VertexId at = x;
    while (true) {
      g.neighbors(at, nbrs);
      at = nbrs[rng.below(static_cast<std::uint32_t>(nbrs.size()))];
      if (StretchedTreeGraph::is_branch(at) && at != x) break;
    }
    deeper.push_back(StretchedTreeGraph::branch_level(at) > level ? 1.0 : 0.0);
  }
  return Estimate::from_samples(deeper, seed, 0);
}

double stretched_displacement_formula(std::uint32_t level) {
  const double l = level;
  return 2.0 / (2.0 + (l + 3.0) / (l + 2.0));
}

Estimate gambler_escape(std::uint32_t r, std::uint64_t samples, std::uint64_t seed) {
  if (r < 2) throw GraphError("gambler escape needs r >= 2");
  std::vector<double> wins;
  wins.reserve(samples);
  for (std::uint64_t s = 0; s < samples; ++s) {
    StreamRng rng(seed, s);
    std::int64_t pos = 1;
    while (pos > 0 && pos < static_cast<std::int64_t>(r)) pos += rng.below(2) ? 1 : -1;
    wins.push_back(pos == static_cast<std::int64_t>(r) ? 1.0 : 0.0);
  }
  return Estimate::from_samples(wins, seed, 0);
}

Estimate concatenated_root_tail(const GraphOracle& g, std::uint32_t k, std::uint64_t samples, std::uint64_t seed,
                                const KernelOptions& opt) {
  const auto* cat = dynamic_cast<const ConcatenatedTreesGraph*>(&g);
  if (cat == nullptr) throw GraphError("root tail probe needs concatenated trees");
  if (k < 1) throw GraphError("tree index starts at 1");
  const double threshold = std::sqrt(static_cast<double>(cat->tree_depth(k))) - 1.0;
  // tau >= threshold  <=>  tau >= t  <=>  no visit during steps 0..t-1.
  const auto t = static_cast<std::uint64_t>(std::max(0.0, std::ceil(threshold)));
  const auto origin = g.origin();
  const auto root = ConcatenatedTreesGraph::tree_root(k);
  std::vector<double> tail;
  if (t == 0) {
    tail.assign(samples, 1.0);
  } else if (t == 1) {
    tail.assign(samples, origin == root ? 0.0 : 1.0);
  } else {
    const std::vector<VertexId> target{root};
    auto hits = hitting_observations(g, origin, target, false, t - 1, samples, seed, opt);
    tail = indicators(hits, false);
  }
  return Estimate::from_samples(tail, seed, t);
}

}  // namespace rangewalk
