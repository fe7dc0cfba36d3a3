#pragma once

// Concrete graph oracles. Most callers only need make_graph(); the kernels
// and the counterexample probes downcast to these for family-specific work.

#include <cstdint>
#include <vector>

#include "rangewalk/graph.hpp"

namespace rangewalk {

class LatticeGraph final : public GraphOracle {
 public:
  explicit LatticeGraph(int dimension);

  int dimension() const { return dim_; }
  Family family() const override { return Family::lattice; }
  std::string name() const override;
  int degree_bound() const override { return 2 * dim_; }
  VertexId origin() const override { return LatticePoint{}; }
  bool contains(const VertexId& v) const override;
  bool vertex_transitive() const override { return true; }
  int degree(const VertexId&) const override { return 2 * dim_; }

 protected:
  void raw_neighbors(const VertexId& v, std::vector<VertexId>& out) const override;
  void encode_fields(const VertexId& v, std::string& out) const override;
  VertexId decode_fields(std::string_view& bytes) const override;

 private:
  int dim_;
};

/// Rooted binary tree; infinite when max_depth == 0.
class BinaryTreeGraph final : public GraphOracle {
 public:
  explicit BinaryTreeGraph(std::uint32_t max_depth = 0);

  bool is_infinite() const { return max_depth_ == 0; }
  std::uint32_t max_depth() const { return max_depth_; }
  Family family() const override { return is_infinite() ? Family::binary_tree : Family::finite_tree; }
  std::string name() const override;
  int degree_bound() const override;
  VertexId origin() const override { return TreeAddress{}; }
  bool contains(const VertexId& v) const override;
  bool finite() const override { return !is_infinite(); }
  int degree(const VertexId& v) const override;

 protected:
  void raw_neighbors(const VertexId& v, std::vector<VertexId>& out) const override;
  void encode_fields(const VertexId& v, std::string& out) const override;
  VertexId decode_fields(std::string_view& bytes) const override;

 private:
  std::uint32_t max_depth_;
};

/// Tree whose edge between levels l-1 and l is subdivided into a path of
/// length l+2. The root has `root_children` children, every other branch
/// vertex two.
class StretchedTreeGraph final : public GraphOracle {
 public:
  explicit StretchedTreeGraph(unsigned root_children = 3);

  unsigned root_children() const { return root_children_; }
  static std::uint32_t path_length(std::uint32_t level) { return level + 2; }
  static bool is_branch(const VertexId& v);
  /// Level in the underlying tree of a branch vertex.
  static std::uint32_t branch_level(const VertexId& v);

  Family family() const override { return Family::stretched_tree; }
  std::string name() const override;
  int degree_bound() const override { return root_children_ > 3 ? static_cast<int>(root_children_) : 3; }
  VertexId origin() const override { return StretchedPoint{}; }
  bool contains(const VertexId& v) const override;
  int degree(const VertexId& v) const override;

 protected:
  void raw_neighbors(const VertexId& v, std::vector<VertexId>& out) const override;
  void encode_fields(const VertexId& v, std::string& out) const override;
  VertexId decode_fields(std::string_view& bytes) const override;

 private:
  unsigned root_children_;
};

/// Finite binary trees of depths a_1 < a_2 < ... whose roots are joined in
/// a chain. Depths beyond the explicit list grow by a factor of four.
class ConcatenatedTreesGraph final : public GraphOracle {
 public:
  explicit ConcatenatedTreesGraph(std::vector<std::uint32_t> depths);

  std::uint32_t tree_depth(std::uint32_t tree) const;
  const std::vector<std::uint32_t>& explicit_depths() const { return depths_; }
  static VertexId tree_root(std::uint32_t tree) { return ConcatPoint{tree, TreeAddress{}}; }

  Family family() const override { return Family::concatenated; }
  std::string name() const override;
  int degree_bound() const override { return 4; }
  VertexId origin() const override { return tree_root(1); }
  bool contains(const VertexId& v) const override;
  int degree(const VertexId& v) const override;

 protected:
  void raw_neighbors(const VertexId& v, std::vector<VertexId>& out) const override;
  void encode_fields(const VertexId& v, std::string& out) const override;
  VertexId decode_fields(std::string_view& bytes) const override;

 private:
  std::vector<std::uint32_t> depths_;
};

/// Small finite test graphs on vertices 0..size-1 (star: center 0).
class SmallGraph final : public GraphOracle {
 public:
  SmallGraph(Family kind, std::uint32_t size);

  std::uint32_t size() const { return size_; }
  Family family() const override { return kind_; }
  std::string name() const override;
  int degree_bound() const override;
  VertexId origin() const override { return LatticePoint{}; }
  bool contains(const VertexId& v) const override;
  bool finite() const override { return true; }
  bool vertex_transitive() const override { return kind_ == Family::cycle; }

 protected:
  void raw_neighbors(const VertexId& v, std::vector<VertexId>& out) const override;
  void encode_fields(const VertexId& v, std::string& out) const override;
  VertexId decode_fields(std::string_view& bytes) const override;

 private:
  Family kind_;
  std::uint32_t size_;
};

}  // namespace rangewalk
