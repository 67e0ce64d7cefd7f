#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>

#include "vcp/engine.hpp"
#include "vcp/graph.hpp"

namespace vcp {

enum class Algorithm { PageRank, ConnectedComponents, Sssp };

std::string_view to_string(Algorithm a);
Algorithm parse_algorithm(std::string_view name);  // "pr" | "cc" | "sssp"

inline constexpr std::uint32_t kUnreachedDistance = 0xFFFFFFFFu;

/// Fixed-iteration PageRank over single broadcasts. Each vertex publishes
/// rank/out_degree; dangling vertices contribute their rank to a global sum
/// that is spread evenly next superstep. Runs exactly `iterations` supersteps.
struct PageRankProgram {
  using State = double;
  using Message = double;
  static constexpr CommMode comm_mode = CommMode::PullBroadcast;
  static constexpr bool needs_active_tracking = false;
  static double combine(double a, double b) { return a + b; }

  std::uint32_t iterations = 10;
  double damping = 0.85;

  template <class Ctx>
  void init(Ctx& c) const {
    const double r = 1.0 / c.vertex_count();
    c.state() = r;
    publish(c, r);
  }

  template <class Ctx>
  void compute(Ctx& c) const {
    const double n = c.vertex_count();
    const double pulled = c.has_message() ? c.message() : 0.0;
    const double r = (1.0 - damping) / n + damping * (pulled + c.aggregated() / n);
    c.state() = r;
    if (c.superstep() + 1 < iterations) publish(c, r);
    else c.vote_to_halt();
  }

 private:
  template <class Ctx>
  static void publish(Ctx& c, double r) {
    if (c.out_degree() > 0) c.broadcast(r / c.out_degree());
    else c.contribute(r);
  }
};

/// Min-label propagation. Only vertices whose label dropped broadcast again.
struct ConnectedComponentsProgram {
  using State = VertexId;
  using Message = VertexId;
  static constexpr CommMode comm_mode = CommMode::PullBroadcast;
  static constexpr bool needs_active_tracking = true;
  static constexpr VertexId neutral = kMaxVertexId;
  static VertexId combine(VertexId a, VertexId b) { return a < b ? a : b; }

  template <class Ctx>
  void init(Ctx& c) const {
    c.state() = c.id();
    c.broadcast(c.id());
  }

  template <class Ctx>
  void compute(Ctx& c) const {
    if (c.has_message() && c.message() < c.state()) {
      c.state() = c.message();
      c.broadcast(c.message());
    }
    c.vote_to_halt();
  }
};

/// Unweighted single-source shortest paths with min-combined hop counts.
/// The source stays active through superstep 0 so that even an isolated
/// source takes one quiescent superstep to finish.
struct SsspProgram {
  using State = std::uint32_t;
  using Message = std::uint32_t;
  static constexpr CommMode comm_mode = CommMode::Push;
  static constexpr bool needs_active_tracking = true;
  static constexpr std::uint32_t neutral = kUnreachedDistance;
  static std::uint32_t combine(std::uint32_t a, std::uint32_t b) { return a < b ? a : b; }

  VertexId source = 0;

  template <class Ctx>
  void init(Ctx& c) const {
    c.state() = kUnreachedDistance;
  }

  template <class Ctx>
  void compute(Ctx& c) const {
    if (c.superstep() == 0) {
      if (c.id() == source) {
        c.state() = 0;
        for (VertexId u : c.out_neighbors()) c.send_message(u, 1);
        return;
      }
    } else if (c.has_message() && c.message() < c.state()) {
      c.state() = c.message();
      for (VertexId u : c.out_neighbors()) c.send_message(u, c.message() + 1);
    }
    c.vote_to_halt();
  }
};

RunReport<double> pagerank(const Graph& g, const EngineConfig& cfg, std::uint32_t iterations = 10,
                           double damping = 0.85);

/// Directed graphs are symmetrised first; connectivity is always undirected.
RunReport<VertexId> connected_components(const Graph& g, const EngineConfig& cfg);

RunReport<std::uint32_t> sssp_unweighted(const Graph& g, VertexId source, const EngineConfig& cfg);

// "vertex value" lines, vertex ids mapped back to the input file's ids.
void write_ranks(std::ostream& os, const Graph& g, std::span<const double> ranks);
void write_labels(std::ostream& os, const Graph& g, std::span<const VertexId> labels);
void write_distances(std::ostream& os, const Graph& g, std::span<const std::uint32_t> dist);

}  // namespace vcp
