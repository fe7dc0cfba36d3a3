#include "rangewalk/probes.hpp"

#include <absl/container/flat_hash_set.h>

namespace rangewalk {

namespace {

using Seen = absl::flat_hash_set<VertexId, VertexHash>;

// Distance shells around x: shells[k] holds the vertices at distance k, for
// k <= radius (fewer when the graph is exhausted first).
std::vector<std::vector<VertexId>> bfs_shells(const GraphOracle& g, const VertexId& x, std::uint32_t radius) {
  Seen seen{x};
  std::vector<std::vector<VertexId>> shells{{x}};
  std::vector<VertexId> nbrs;
  for (std::uint32_t r = 0; r < radius; ++r) {
    std::vector<VertexId> next;
    for (const auto& v : shells.back()) {
      g.neighbors(v, nbrs);
      for (auto& y : nbrs) {
        if (seen.insert(y).second) next.push_back(std::move(y));
      }
    }
    if (next.empty()) break;
    shells.push_back(std::move(next));
  }
  return shells;
}

}  // namespace

VertexSet ball(const GraphOracle& g, const VertexId& x, std::uint32_t r) {
  std::vector<VertexId> all;
  for (auto& shell : bfs_shells(g, x, r)) all.insert(all.end(), shell.begin(), shell.end());
  return VertexSet(std::move(all));
}

VertexSet sphere(const GraphOracle& g, const VertexId& x, std::uint32_t r) {
  auto shells = bfs_shells(g, x, r + 1);
  if (shells.size() <= r + 1) return {};
  return VertexSet(std::move(shells.back()));
}

std::size_t sphere_size(const GraphOracle& g, const VertexId& x, std::uint32_t r) { return sphere(g, x, r).size(); }

VertexSet interior_boundary(const GraphOracle& g, const VertexSet& a) {
  std::vector<VertexId> out, nbrs;
  for (const auto& v : a) {
    g.neighbors(v, nbrs);
    for (const auto& y : nbrs) {
      if (!a.contains(y)) {
        out.push_back(v);
        break;
      }
    }
  }
  return VertexSet::from_sorted_unique(std::move(out));
}

std::size_t interior_boundary_size(const GraphOracle& g, const VertexSet& a) {
  return interior_boundary(g, a).size();
}

std::optional<std::uint32_t> min_degree3_distance(const GraphOracle& g, const VertexId& x, std::uint32_t r_max) {
  Seen seen{x};
  std::vector<VertexId> layer{x}, next, nbrs;
  for (std::uint32_t r = 0; r <= r_max && !layer.empty(); ++r) {
    for (const auto& v : layer) {
      if (g.degree(v) >= 3) return r;
    }
    if (r == r_max) break;
    next.clear();
    for (const auto& v : layer) {
      g.neighbors(v, nbrs);
      for (auto& y : nbrs) {
        if (seen.insert(y).second) next.push_back(y);
      }
    }
    layer.swap(next);
  }
  return std::nullopt;
}

bool is_connected(const GraphOracle& g, const VertexSet& a) {
  if (a.empty()) return true;
  std::vector<char> seen(a.size(), 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  std::vector<VertexId> nbrs;
  while (!stack.empty()) {
    const auto i = stack.back();
    stack.pop_back();
    g.neighbors(a[i], nbrs);
    for (const auto& y : nbrs) {
      if (auto j = a.index_of(y); j && !seen[*j]) {
        seen[*j] = 1;
        ++reached;
        stack.push_back(*j);
      }
    }
  }
  return reached == a.size();
}

}  // namespace rangewalk
