#pragma once

// Deterministic structural probes: balls, spheres, boundaries.

#include <cstdint>
#include <optional>

#include "rangewalk/graph.hpp"
#include "rangewalk/vertex_set.hpp"

namespace rangewalk {

/// Closed ball {y : d(x,y) <= r}.
VertexSet ball(const GraphOracle& g, const VertexId& x, std::uint32_t r);

/// Exterior boundary of B(x,r): the vertices at distance exactly r+1.
VertexSet sphere(const GraphOracle& g, const VertexId& x, std::uint32_t r);
std::size_t sphere_size(const GraphOracle& g, const VertexId& x, std::uint32_t r);

/// Members of A with at least one neighbor outside A.
VertexSet interior_boundary(const GraphOracle& g, const VertexSet& a);
std::size_t interior_boundary_size(const GraphOracle& g, const VertexSet& a);

/// Distance from x to the nearest vertex of degree >= 3, searched up to r_max.
std::optional<std::uint32_t> min_degree3_distance(const GraphOracle& g, const VertexId& x, std::uint32_t r_max);

/// Whether the subgraph induced by A is connected.
bool is_connected(const GraphOracle& g, const VertexSet& a);

}  // namespace rangewalk
