#pragma once

#include <cstdint>
#include <vector>

#include "vcp/graph.hpp"

namespace vcp::gen {

/// G(n, m): m edges with uniformly random distinct endpoints (duplicates kept).
Graph erdos_renyi(VertexId n, std::uint64_t m, std::uint64_t seed, bool undirected = true);

/// Degree sequence drawn from a discrete Pareto tail P(d) ~ d^-alpha, d >= min_degree,
/// truncated at n - 1.
std::vector<VertexId> power_law_degrees(VertexId n, double alpha, std::uint64_t seed, VertexId min_degree = 1);

/// Chung-Lu graph: edge endpoints drawn proportionally to `weights`, about
/// sum(weights)/2 edges in total. Self-loops are dropped.
Graph chung_lu(const std::vector<VertexId>& weights, std::uint64_t seed, bool undirected = true);

/// Chung-Lu over power_law_degrees(n, alpha, seed, min_degree).
Graph power_law(VertexId n, double alpha, std::uint64_t seed, VertexId min_degree = 1, bool undirected = true);

Graph path(VertexId n, bool undirected = true);
Graph cycle(VertexId n, bool undirected = true);
/// Hub 0 joined to leaves 1..leaves.
Graph star(VertexId leaves, bool undirected = true);
/// {0,1,2} and {3,4,5}.
Graph two_triangles();
Graph complete(VertexId n);

}  // namespace vcp::gen
