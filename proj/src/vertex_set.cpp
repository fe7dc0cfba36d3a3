#include "rangewalk/vertex_set.hpp"

#include <algorithm>

namespace rangewalk {

VertexSet::VertexSet(std::vector<VertexId> items) : items_(std::move(items)) {
  std::sort(items_.begin(), items_.end(), VertexLess{});
  items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
}

VertexSet VertexSet::from_sorted_unique(std::vector<VertexId> items) {
  VertexSet s;
  s.items_ = std::move(items);
  return s;
}

bool VertexSet::contains(const VertexId& v) const { return index_of(v).has_value(); }

std::optional<std::size_t> VertexSet::index_of(const VertexId& v) const {
  auto it = std::lower_bound(items_.begin(), items_.end(), v, VertexLess{});
  if (it == items_.end() || compare_vertices(*it, v) != 0) return std::nullopt;
  return static_cast<std::size_t>(it - items_.begin());
}

bool VertexSet::is_subset_of(const VertexSet& other) const {
  return std::includes(other.items_.begin(), other.items_.end(), items_.begin(), items_.end(), VertexLess{});
}

std::string VertexSet::encode(const GraphOracle& g) const {
  std::string out;
  const auto n = static_cast<std::uint32_t>(items_.size());
  out.push_back(static_cast<char>(n >> 24));
  out.push_back(static_cast<char>(n >> 16));
  out.push_back(static_cast<char>(n >> 8));
  out.push_back(static_cast<char>(n));
  for (const auto& v : items_) g.encode(v, out);
  return out;
}

VertexSet VertexSet::decode(const GraphOracle& g, std::string_view bytes) {
  if (bytes.size() < 4) throw GraphError("set encoding truncated");
  std::uint32_t n = 0;
  for (int i = 0; i < 4; ++i) n = (n << 8) | static_cast<unsigned char>(bytes[i]);
  bytes.remove_prefix(4);
  std::vector<VertexId> items;
  items.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) items.push_back(g.decode_prefix(bytes));
  if (!bytes.empty()) throw GraphError("trailing bytes after set encoding");
  VertexSet s(std::move(items));
  if (s.size() != n) throw GraphError("set encoding is not canonical");
  return s;
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  std::vector<VertexId> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out), VertexLess{});
  return VertexSet::from_sorted_unique(std::move(out));
}

}  // namespace rangewalk
