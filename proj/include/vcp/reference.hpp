#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "vcp/engine.hpp"
#include "vcp/graph.hpp"

// Single-threaded references used by the tests and by --validate. Nothing
// here shares code with the parallel engine.
namespace vcp::reference {

/// Component label = smallest vertex id in the component, edges taken as undirected.
std::vector<VertexId> union_find_components(const Graph& g);

inline constexpr std::uint32_t kUnreached = 0xFFFFFFFFu;

/// Hop distances along out-edges; kUnreached for vertices not reachable.
std::vector<std::uint32_t> bfs_distances(const Graph& g, VertexId source);

/// Power iteration on the explicit N x N transition matrix. Dangling columns
/// are uniform 1/N. Use for small graphs only.
std::vector<double> pagerank_dense(const Graph& g, std::uint32_t iterations, double damping);

/// Same iteration by scattering rank along the edge list.
std::vector<double> pagerank_scatter(const Graph& g, std::uint32_t iterations, double damping);

struct Trace {
  std::uint64_t superstep_count = 0;
  std::vector<std::uint64_t> active;    // per superstep
  std::vector<std::uint64_t> messages;  // per superstep
  bool hit_cap = false;
};

template <class State>
struct Simulation {
  std::vector<State> states;
  Trace trace;
};

namespace detail {

template <class P>
struct SimCore {
  using State = typename P::State;
  using M = typename P::Message;
  static constexpr bool kPush = P::comm_mode == CommMode::Push;

  const Graph& g;
  std::vector<State> state;
  std::vector<char> halted;
  std::vector<std::optional<M>> inbox, next_inbox;  // push: per recipient; pull: per sender
  std::uint64_t superstep = 0;
  std::uint64_t messages = 0;
  double sum = 0.0, next_sum = 0.0;
};

template <class P>
class SimContext {
 public:
  using State = typename P::State;
  using Message = typename P::Message;

  SimContext(SimCore<P>& core, VertexId v, std::optional<Message> msg) : c_(core), v_(v), msg_(msg) {}

  VertexId id() const { return v_; }
  std::uint64_t superstep() const { return c_.superstep; }
  VertexId vertex_count() const { return c_.g.vertex_count(); }
  State& state() { return c_.state[v_]; }
  bool has_message() const { return msg_.has_value(); }
  Message message() const { return *msg_; }

  void send_message(VertexId dst, Message m)
    requires(P::comm_mode == CommMode::Push)
  {
    auto& slot = c_.next_inbox.at(dst);
    slot = slot ? P::combine(*slot, m) : m;
    ++c_.messages;
  }
  void broadcast(Message m)
    requires(P::comm_mode == CommMode::PullBroadcast)
  {
    if (!c_.next_inbox[v_]) ++c_.messages;
    c_.next_inbox[v_] = m;
  }
  void vote_to_halt() { c_.halted[v_] = 1; }

  VertexId out_degree() const { return c_.g.out_degree(v_); }
  VertexId in_degree() const { return c_.g.in_degree(v_); }
  std::span<const VertexId> out_neighbors() const { return c_.g.out_neighbors(v_); }
  std::span<const VertexId> in_neighbors() const { return c_.g.in_neighbors(v_); }
  void contribute(double x) { c_.next_sum += x; }
  double aggregated() const { return c_.sum; }

 private:
  SimCore<P>& c_;
  VertexId v_;
  std::optional<Message> msg_;
};

}  // namespace detail

/// Textbook BSP loop over the same program interface the engine runs.
template <VertexProgram P>
Simulation<typename P::State> simulate(const Graph& g, const P& program, std::uint64_t max_supersteps = 10'000) {
  using Core = detail::SimCore<P>;
  using Ctx = detail::SimContext<P>;
  const VertexId n = g.vertex_count();
  Core core{g, std::vector<typename P::State>(n), std::vector<char>(n, 0), {}, {}};
  core.inbox.assign(n, std::nullopt);
  core.next_inbox.assign(n, std::nullopt);

  Simulation<typename P::State> out;
  if (n == 0) return out;

  for (VertexId v = 0; v < n; ++v) {
    Ctx ctx(core, v, std::nullopt);
    if constexpr (requires { program.init(ctx); }) program.init(ctx);
  }
  core.inbox.swap(core.next_inbox);
  core.sum = core.next_sum;
  core.next_sum = 0.0;

  while (true) {
    core.messages = 0;
    std::uint64_t active = 0;
    for (VertexId v = 0; v < n; ++v) {
      std::optional<typename P::Message> msg;
      if constexpr (Core::kPush) {
        msg = core.inbox[v];
      } else {
        for (VertexId u : g.in_neighbors(v))
          if (core.inbox[u]) msg = msg ? P::combine(*msg, *core.inbox[u]) : *core.inbox[u];
      }
      if (core.superstep > 0 && core.halted[v] && !msg) continue;
      core.halted[v] = 0;
      ++active;
      Ctx ctx(core, v, msg);
      program.compute(ctx);
    }
    out.trace.active.push_back(active);
    out.trace.messages.push_back(core.messages);
    ++core.superstep;

    bool any = false;
    for (VertexId v = 0; v < n && !any; ++v) {
      if (!core.halted[v]) any = true;
      else if constexpr (Core::kPush) any = core.next_inbox[v].has_value();
      else any = core.next_inbox[v].has_value() && g.out_degree(v) > 0;
    }
    // a vertex's own previous broadcast must not leak into the superstep after next
    core.inbox.swap(core.next_inbox);
    core.next_inbox.assign(n, std::nullopt);
    core.sum = core.next_sum;
    core.next_sum = 0.0;
    if (!any) break;
    if (core.superstep >= max_supersteps) {
      out.trace.hit_cap = true;
      break;
    }
  }
  out.trace.superstep_count = core.superstep;
  out.states = std::move(core.state);
  return out;
}

}  // namespace vcp::reference
