#include "vcp/generators.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace vcp::gen {

Graph erdos_renyi(VertexId n, std::uint64_t m, std::uint64_t seed, bool undirected) {
  if (n < 2 && m > 0) throw std::invalid_argument("erdos_renyi needs at least two vertices for edges");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<VertexId> pick(0, n ? n - 1 : 0);
  std::vector<Edge> edges;
  edges.reserve(m);
  while (edges.size() < m) {
    const VertexId a = pick(rng), b = pick(rng);
    if (a != b) edges.push_back({a, b});
  }
  return Graph::from_edges(n, edges, undirected);
}

std::vector<VertexId> power_law_degrees(VertexId n, double alpha, std::uint64_t seed, VertexId min_degree) {
  if (alpha <= 1.0) throw std::invalid_argument("power-law exponent must exceed 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double cap = n > 1 ? n - 1 : 1;
  std::vector<VertexId> deg(n);
  for (auto& d : deg) {
    // inverse CDF of a continuous Pareto, floored
    const double x = min_degree * std::pow(1.0 - u(rng), -1.0 / (alpha - 1.0));
    d = static_cast<VertexId>(std::min(std::floor(x), cap));
  }
  return deg;
}

Graph chung_lu(const std::vector<VertexId>& weights, std::uint64_t seed, bool undirected) {
  const auto n = static_cast<VertexId>(weights.size());
  std::uint64_t total = 0;
  for (VertexId w : weights) total += w;
  const std::uint64_t m = total / 2;
  std::vector<Edge> edges;
  if (n == 0 || m == 0) return Graph::from_edges(n, edges, undirected);
  std::mt19937_64 rng(seed);
  std::discrete_distribution<VertexId> pick(weights.begin(), weights.end());
  edges.reserve(m);
  for (std::uint64_t i = 0; i < m; ++i) {
    const VertexId a = pick(rng), b = pick(rng);
    if (a != b) edges.push_back({a, b});
  }
  return Graph::from_edges(n, edges, undirected);
}

Graph power_law(VertexId n, double alpha, std::uint64_t seed, VertexId min_degree, bool undirected) {
  return chung_lu(power_law_degrees(n, alpha, seed, min_degree), seed ^ 0x9e3779b97f4a7c15ull, undirected);
}

Graph path(VertexId n, bool undirected) {
  std::vector<Edge> edges;
  for (VertexId v = 1; v < n; ++v) edges.push_back({v - 1, v});
  return Graph::from_edges(n, edges, undirected);
}

Graph cycle(VertexId n, bool undirected) {
  std::vector<Edge> edges;
  for (VertexId v = 0; v < n && n > 1; ++v) edges.push_back({v, (v + 1) % n});
  return Graph::from_edges(n, edges, undirected);
}

Graph star(VertexId leaves, bool undirected) {
  std::vector<Edge> edges;
  for (VertexId v = 1; v <= leaves; ++v) edges.push_back({0, v});
  return Graph::from_edges(leaves + 1, edges, undirected);
}

Graph two_triangles() {
  const std::vector<Edge> edges{{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}};
  return Graph::from_edges(6, edges, true);
}

Graph complete(VertexId n) {
  std::vector<Edge> edges;
  for (VertexId a = 0; a < n; ++a)
    for (VertexId b = a + 1; b < n; ++b) edges.push_back({a, b});
  return Graph::from_edges(n, edges, true);
}

}  // namespace vcp::gen
