#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace rangewalk {

class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr int kMaxLatticeDim = 4;

/// A point of Z^d (unused trailing coordinates stay zero). Also labels the
/// vertices of the small finite test graphs (path, cycle, star) via x[0].
struct LatticePoint {
  std::array<std::int32_t, kMaxLatticeDim> x{};

  friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

/// Address of a vertex in a rooted tree: the child digits chosen on the way
/// down from the root. Digits are packed two bits each, most significant
/// first, so word-wise comparison is lexicographic on the digit sequence.
class TreeAddress {
 public:
  TreeAddress() = default;

  std::uint32_t depth() const { return depth_; }
  bool is_root() const { return depth_ == 0; }
  unsigned digit(std::uint32_t level) const;
  TreeAddress child(unsigned digit) const;
  TreeAddress parent() const;
  std::size_t hash() const;

  friend bool operator==(const TreeAddress& a, const TreeAddress& b) {
    return a.depth_ == b.depth_ && a.words_ == b.words_;
  }
  friend std::strong_ordering operator<=>(const TreeAddress& a, const TreeAddress& b);

 private:
  static constexpr unsigned kDigitsPerWord = 32;
  std::uint32_t depth_ = 0;
  boost::container::small_vector<std::uint64_t, 2> words_;
};

/// Vertex of the stretched tree. offset == 0 is the branch vertex `branch`;
/// otherwise the vertex sits `offset` steps below parent(branch) on the
/// subdivided path leading to `branch`.
struct StretchedPoint {
  TreeAddress branch;
  std::uint32_t offset = 0;

  friend bool operator==(const StretchedPoint&, const StretchedPoint&) = default;
  friend std::strong_ordering operator<=>(const StretchedPoint& a, const StretchedPoint& b);
};

/// Vertex of the concatenated trees: tree index (1-based) and address in it.
struct ConcatPoint {
  std::uint32_t tree = 1;
  TreeAddress address;

  friend bool operator==(const ConcatPoint&, const ConcatPoint&) = default;
  friend std::strong_ordering operator<=>(const ConcatPoint& a, const ConcatPoint& b);
};

using VertexId = std::variant<LatticePoint, TreeAddress, StretchedPoint, ConcatPoint>;

struct VertexHash {
  std::size_t operator()(const VertexId& v) const;
};

enum class Family : std::uint8_t {
  lattice = 0x01,
  binary_tree = 0x02,
  finite_tree = 0x03,
  stretched_tree = 0x04,
  concatenated = 0x05,
  path = 0x06,
  cycle = 0x07,
  star = 0x08,
};

/// Lazy adjacency oracle. Implementations are immutable after construction
/// and safe for concurrent readers.
class GraphOracle {
 public:
  virtual ~GraphOracle() = default;

  virtual Family family() const = 0;
  /// Round-trippable description, e.g. "lattice:3" or "concatenated:16,64,256".
  virtual std::string name() const = 0;
  virtual int degree_bound() const = 0;
  virtual VertexId origin() const = 0;
  virtual bool contains(const VertexId& v) const = 0;
  virtual bool vertex_transitive() const { return false; }
  virtual bool finite() const { return false; }

  /// Neighbors of v in canonical order (ascending byte encoding).
  void neighbors(const VertexId& v, std::vector<VertexId>& out) const;
  std::vector<VertexId> neighbors(const VertexId& v) const;
  virtual int degree(const VertexId& v) const;

  /// Family tag byte followed by big-endian fields. Prefix-free within a
  /// family, and lexicographic byte order equals the canonical vertex order.
  void encode(const VertexId& v, std::string& out) const;
  std::string encode(const VertexId& v) const;
  VertexId decode(std::string_view bytes) const;
  /// Decodes one vertex from the front of `bytes` and advances past it.
  VertexId decode_prefix(std::string_view& bytes) const;

 protected:
  virtual void raw_neighbors(const VertexId& v, std::vector<VertexId>& out) const = 0;
  virtual void encode_fields(const VertexId& v, std::string& out) const = 0;
  virtual VertexId decode_fields(std::string_view& bytes) const = 0;
};

using Graph = std::shared_ptr<const GraphOracle>;

/// Family name plus parameters, as accepted by the CLI ("lattice:2").
struct GraphSpec {
  std::string family;
  int dimension = 1;                  // lattice
  std::uint32_t depth = 0;            // finite-tree
  std::vector<std::uint32_t> depths;  // concatenated
  unsigned root_children = 3;         // stretched
  std::uint32_t size = 0;             // path, cycle, star

  static GraphSpec parse(std::string_view text);
};

Graph make_graph(const GraphSpec& spec);
Graph make_graph(std::string_view text);

std::strong_ordering compare_vertices(const VertexId& a, const VertexId& b);

struct VertexLess {
  bool operator()(const VertexId& a, const VertexId& b) const { return compare_vertices(a, b) < 0; }
};

std::string to_hex(std::string_view bytes);
std::string from_hex(std::string_view hex);
/// Human-readable label, e.g. "(1,-2)" or "t2:0110".
std::string describe(const VertexId& v);

}  // namespace rangewalk
