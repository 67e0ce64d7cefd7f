#include "vcp/reference.hpp"

#include <numeric>
#include <queue>
#include <stdexcept>

namespace vcp::reference {

namespace {

VertexId find(std::vector<VertexId>& parent, VertexId x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

std::vector<VertexId> union_find_components(const Graph& g) {
  const VertexId n = g.vertex_count();
  std::vector<VertexId> parent(n);
  std::iota(parent.begin(), parent.end(), VertexId{0});
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v : g.out_neighbors(u)) {
      const VertexId a = find(parent, u), b = find(parent, v);
      // the smaller root wins, so every root is its component's minimum
      if (a < b) parent[b] = a;
      else if (b < a) parent[a] = b;
    }
  }
  for (VertexId v = 0; v < n; ++v) parent[v] = find(parent, v);
  return parent;
}

std::vector<std::uint32_t> bfs_distances(const Graph& g, VertexId source) {
  if (source >= g.vertex_count()) throw std::out_of_range("bfs source out of range");
  std::vector<std::uint32_t> dist(g.vertex_count(), kUnreached);
  std::queue<VertexId> q;
  dist[source] = 0;
  q.push(source);
  while (!q.empty()) {
    const VertexId u = q.front();
    q.pop();
    for (VertexId v : g.out_neighbors(u)) {
      if (dist[v] == kUnreached) {
        dist[v] = dist[u] + 1;
        q.push(v);
      }
    }
  }
  return dist;
}

std::vector<double> pagerank_dense(const Graph& g, std::uint32_t iterations, double damping) {
  const std::size_t n = g.vertex_count();
  if (n == 0) return {};
  // a[i*n + j] = probability of stepping j -> i
  std::vector<double> a(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const auto nb = g.out_neighbors(static_cast<VertexId>(j));
    if (nb.empty()) {
      for (std::size_t i = 0; i < n; ++i) a[i * n + j] = 1.0 / static_cast<double>(n);
    } else {
      for (VertexId i : nb) a[i * n + j] += 1.0 / static_cast<double>(nb.size());
    }
  }
  std::vector<double> r(n, 1.0 / static_cast<double>(n)), next(n);
  const double base = (1.0 - damping) / static_cast<double>(n);
  for (std::uint32_t it = 0; it < iterations; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += a[i * n + j] * r[j];
      next[i] = base + damping * s;
    }
    r.swap(next);
  }
  return r;
}

std::vector<double> pagerank_scatter(const Graph& g, std::uint32_t iterations, double damping) {
  const VertexId n = g.vertex_count();
  if (n == 0) return {};
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<double> r(n, inv_n), acc(n);
  for (std::uint32_t it = 0; it < iterations; ++it) {
    std::fill(acc.begin(), acc.end(), 0.0);
    double dangling = 0.0;
    for (VertexId u = 0; u < n; ++u) {
      const auto nb = g.out_neighbors(u);
      if (nb.empty()) {
        dangling += r[u];
        continue;
      }
      const double share = r[u] / static_cast<double>(nb.size());
      for (VertexId v : nb) acc[v] += share;
    }
    for (VertexId v = 0; v < n; ++v) r[v] = (1.0 - damping) * inv_n + damping * (acc[v] + dangling * inv_n);
  }
  return r;
}

}  // namespace vcp::reference
