#include "rangewalk/walker.hpp"

#include <algorithm>

namespace rangewalk {

std::uint32_t ExploredRegion::intern(const VertexId& v) {
  auto [it, inserted] = index_.try_emplace(v, static_cast<std::uint32_t>(labels_.size()));
  if (inserted) {
    labels_.push_back(v);
    nodes_.emplace_back();
  }
  return it->second;
}

std::optional<std::uint32_t> ExploredRegion::find(const VertexId& v) const {
  auto it = index_.find(v);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::span<const std::uint32_t> ExploredRegion::neighbors(std::uint32_t id) {
  if (nodes_[id].begin == kUnexpanded) {
    g_->neighbors(labels_[id], scratch_);
    const auto begin = static_cast<std::uint32_t>(adjacency_.size());
    for (const auto& y : scratch_) adjacency_.push_back(intern(y));
    nodes_[id] = Node{begin, static_cast<std::uint32_t>(scratch_.size())};
  }
  const auto& node = nodes_[id];
  return {adjacency_.data() + node.begin, node.count};
}

void ExploredRegion::clear() {
  labels_.clear();
  nodes_.clear();
  adjacency_.clear();
  index_.clear();
}

void Walker::reset() {
  for (auto id : visited_) visit_count_[id] = 0;
  visited_.clear();
  region_.clear();
}

void Walker::mark(std::uint32_t id) {
  if (id >= visit_count_.size()) visit_count_.resize(std::max<std::size_t>(id + 1, visit_count_.size() * 2), 0);
  if (visit_count_[id]++ == 0) visited_.push_back(id);
}

void Walker::run(const VertexId& start, std::uint64_t n, StreamRng& rng, std::vector<std::uint32_t>* path) {
  reset();
  std::uint32_t at = region_.intern(start);
  mark(at);
  if (path) {
    path->clear();
    path->push_back(at);
  }
  for (std::uint64_t t = 0; t < n; ++t) {
    const auto nbrs = region_.neighbors(at);
    if (nbrs.empty()) break;
    at = nbrs[rng.below(static_cast<std::uint32_t>(nbrs.size()))];
    mark(at);
    if (path) path->push_back(at);
  }
}

std::uint64_t Walker::boundary_size() {
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < visited_.size(); ++i) {
    const auto id = visited_[i];
    for (auto y : region_.neighbors(id)) {
      if (y >= visit_count_.size() || visit_count_[y] == 0) {
        ++count;
        break;
      }
    }
  }
  return count;
}

VertexSet Walker::range() const {
  std::vector<VertexId> items;
  items.reserve(visited_.size());
  for (auto id : visited_) items.push_back(region_.label(id));
  return VertexSet(std::move(items));
}

std::uint64_t Walker::visits_to(const VertexId& x) const {
  auto id = region_.find(x);
  if (!id || *id >= visit_count_.size()) return 0;
  return visit_count_[*id];
}

HittingResult Walker::hit(const VertexId& start, std::span<const VertexId> target, bool strict, std::uint64_t cap,
                          StreamRng& rng) {
  reset();
  std::uint32_t at = region_.intern(start);
  std::vector<std::uint32_t> targets;
  targets.reserve(target.size());
  for (const auto& v : target) targets.push_back(region_.intern(v));
  std::sort(targets.begin(), targets.end());
  auto in_target = [&](std::uint32_t id) { return std::binary_search(targets.begin(), targets.end(), id); };

  HittingResult result{std::nullopt, cap};
  if (!strict && in_target(at)) {
    result.time = 0;
    return result;
  }
  for (std::uint64_t t = 1; t <= cap; ++t) {
    const auto nbrs = region_.neighbors(at);
    if (nbrs.empty()) break;
    at = nbrs[rng.below(static_cast<std::uint32_t>(nbrs.size()))];
    if (in_target(at)) {
      result.time = t;
      return result;
    }
  }
  return result;
}

WalkSample run_walk(const GraphOracle& g, const VertexId& o, const WalkConfig& cfg) {
  Walker walker(g);
  StreamRng rng(cfg.seed, cfg.stream);
  std::vector<std::uint32_t> ids;
  walker.run(o, cfg.n, rng, &ids);
  WalkSample sample;
  sample.path.reserve(ids.size());
  for (auto id : ids) sample.path.push_back(walker.region().label(id));
  sample.range = walker.range();
  sample.boundary_size = walker.boundary_size();
  return sample;
}

HittingResult hitting_time(const GraphOracle& g, const VertexId& o, const VertexSet& target, bool strict,
                           std::uint64_t cap, const WalkConfig& cfg) {
  Walker walker(g);
  StreamRng rng(cfg.seed, cfg.stream);
  return walker.hit(o, target.items(), strict, cap, rng);
}

std::vector<std::uint64_t> visit_count_profile(const GraphOracle& g, const VertexId& o, const VertexId& x,
                                               const WalkConfig& cfg, std::uint64_t samples) {
  Walker walker(g);
  std::vector<std::uint64_t> counts;
  counts.reserve(samples);
  for (std::uint64_t i = 0; i < samples; ++i) {
    StreamRng rng(cfg.seed, cfg.stream + i);
    walker.run(o, cfg.n, rng);
    counts.push_back(walker.visits_to(x));
  }
  return counts;
}

std::string trace_csv(const GraphOracle& g, const WalkSample& sample) {
  std::string out = "step,vertex\n";
  for (std::size_t t = 0; t < sample.path.size(); ++t) {
    out += std::to_string(t);
    out += ',';
    out += to_hex(g.encode(sample.path[t]));
    out += '\n';
  }
  return out;
}

}  // namespace rangewalk
