#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rangewalk/graph.hpp"

namespace rangewalk {

/// Finite set of vertices kept sorted in canonical order without duplicates.
class VertexSet {
 public:
  VertexSet() = default;
  /// Sorts and deduplicates.
  explicit VertexSet(std::vector<VertexId> items);
  static VertexSet from_sorted_unique(std::vector<VertexId> items);

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  bool contains(const VertexId& v) const;
  /// Position of v in canonical order, if present.
  std::optional<std::size_t> index_of(const VertexId& v) const;
  bool is_subset_of(const VertexSet& other) const;

  const VertexId& operator[](std::size_t i) const { return items_[i]; }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }
  std::span<const VertexId> items() const { return items_; }

  /// Big-endian u32 count followed by the member encodings in order.
  std::string encode(const GraphOracle& g) const;
  static VertexSet decode(const GraphOracle& g, std::string_view bytes);

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<VertexId> items_;
};

VertexSet set_union(const VertexSet& a, const VertexSet& b);

}  // namespace rangewalk
