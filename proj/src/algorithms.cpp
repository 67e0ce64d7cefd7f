#include "vcp/algorithms.hpp"

#include <cstdio>
#include <ostream>
#include <string>

namespace vcp {

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::PageRank: return "pr";
    case Algorithm::ConnectedComponents: return "cc";
    case Algorithm::Sssp: return "sssp";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "pr") return Algorithm::PageRank;
  if (name == "cc") return Algorithm::ConnectedComponents;
  if (name == "sssp") return Algorithm::Sssp;
  throw ConfigError("unknown algorithm '" + std::string(name) + "' (expected pr, cc or sssp)");
}

RunReport<double> pagerank(const Graph& g, const EngineConfig& cfg, std::uint32_t iterations, double damping) {
  if (iterations == 0) throw ConfigError("pagerank needs at least one iteration");
  if (!(damping > 0.0 && damping < 1.0)) throw ConfigError("pagerank damping must lie in (0, 1)");
  PageRankProgram p;
  p.iterations = iterations;
  p.damping = damping;
  return run(g, p, cfg);
}

RunReport<VertexId> connected_components(const Graph& g, const EngineConfig& cfg) {
  if (g.undirected()) return run(g, ConnectedComponentsProgram{}, cfg);
  return run(g.symmetrized(), ConnectedComponentsProgram{}, cfg);
}

RunReport<std::uint32_t> sssp_unweighted(const Graph& g, VertexId source, const EngineConfig& cfg) {
  if (source >= g.vertex_count())
    throw ConfigError("sssp source " + std::to_string(source) + " is not a vertex (graph has " +
                      std::to_string(g.vertex_count()) + ")");
  SsspProgram p;
  p.source = source;
  return run(g, p, cfg);
}

void write_ranks(std::ostream& os, const Graph& g, std::span<const double> ranks) {
  char buf[32];
  for (VertexId v = 0; v < ranks.size(); ++v) {
    std::snprintf(buf, sizeof buf, "%.17g", ranks[v]);
    os << g.original_id(v) << ' ' << buf << '\n';
  }
}

void write_labels(std::ostream& os, const Graph& g, std::span<const VertexId> labels) {
  for (VertexId v = 0; v < labels.size(); ++v) os << g.original_id(v) << ' ' << g.original_id(labels[v]) << '\n';
}

void write_distances(std::ostream& os, const Graph& g, std::span<const std::uint32_t> dist) {
  for (VertexId v = 0; v < dist.size(); ++v) {
    os << g.original_id(v) << ' ';
    if (dist[v] == kUnreachedDistance) os << "inf\n";
    else os << dist[v] << '\n';
  }
}

}  // namespace vcp
