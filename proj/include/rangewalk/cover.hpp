#pragma once

// Covering a connected set A by r-balls placed along a depth-first cover
// path, and a lossless code for A built on that cover.
//
// Serialized RangeCode layout:
//   header  : LEB128 varints n, r, K, L, W, then the origin's vertex encoding
//   payload : MSB-first bitstream, zero-padded to a byte boundary
//     W bits  the center choices as one mixed-radix integer; digit i (first
//             digit least significant) is the index of x_{i+1} in the
//             canonical order of the sphere of radius r+1 around x_i
//     K bits  unfilled indicator, one per center
//     per unfilled center, |B(x_i,r)| bits: membership in A of each ball
//             vertex in canonical order

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rangewalk/graph.hpp"
#include "rangewalk/vertex_set.hpp"

namespace rangewalk {

class CodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// DFS walk through the induced subgraph G(A) from o, canonical neighbor
/// order, cut after the last newly discovered vertex. Length <= 2(|A|-1).
std::vector<VertexId> cover_path(const GraphOracle& g, const VertexSet& a, const VertexId& o);

struct CoverSequence {
  std::vector<VertexId> centers;
  std::vector<bool> unfilled;  // B(x_i, r) not contained in A
  std::uint32_t r = 1;

  std::size_t k() const { return centers.size(); }
  std::size_t l() const;
};

CoverSequence f_r(const GraphOracle& g, const VertexSet& a, const VertexId& o, std::uint32_t r);

struct RangeCode {
  std::uint64_t n = 0;
  std::uint32_t r = 1;
  VertexId origin;
  std::vector<std::uint32_t> center_index;  // K-1 sphere indices
  std::vector<std::uint32_t> radix;         // sphere size behind each index
  std::vector<bool> unfilled;
  std::vector<std::vector<bool>> membership;  // one bitmap per unfilled center

  std::size_t k() const { return unfilled.size(); }
  std::size_t l() const { return membership.size(); }
  /// Width of the mixed-radix center integer.
  std::uint32_t center_bits() const;
  std::uint64_t payload_bits() const;
  /// payload_bits * log 2; the header is framing (at most ~2 log(n+1)).
  double length_nats() const;
};

RangeCode encode_range(const GraphOracle& g, const VertexSet& a, const VertexId& o, std::uint32_t r,
                       std::uint64_t n = 0);
VertexSet decode_range(const GraphOracle& g, const RangeCode& code);

std::string serialize(const GraphOracle& g, const RangeCode& code);
RangeCode deserialize(const GraphOracle& g, std::string_view bytes);

/// s_r = |sphere of radius r+1| and b_r = |B(x,r)|.
struct CoverConstants {
  std::size_t s_r = 0;
  std::size_t b_r = 0;
};

/// Exact at the origin for vertex-transitive graphs, else the maximum over
/// `centers` (a surrogate for the supremum over all vertices).
CoverConstants cover_constants(const GraphOracle& g, std::uint32_t r, const std::vector<VertexId>& centers);

/// K (log s_r + log 2) + b_r L log 2, with s_r taken as at least 1.
double code_length_bound(double k, double l, const CoverConstants& c);

}  // namespace rangewalk
