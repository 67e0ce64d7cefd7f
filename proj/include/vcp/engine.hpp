#pragma once

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <concepts>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <type_traits>
#include <vector>

#include "vcp/graph.hpp"
#include "vcp/layout.hpp"
#include "vcp/mailbox.hpp"
#include "vcp/scheduler.hpp"
#include "vcp/types.hpp"

namespace vcp {

enum class CommMode { Push, PullBroadcast };

/// A user algorithm. Besides the members checked here a program provides
///   template <class Ctx> void compute(Ctx&) const;
/// and optionally
///   template <class Ctx> void init(Ctx&) const;
/// which runs once per vertex before superstep 0. Messages sent or values
/// broadcast from init() are visible in superstep 0.
template <class P>
concept VertexProgram = requires(typename P::Message a, typename P::Message b) {
  typename P::State;
  { P::comm_mode } -> std::convertible_to<CommMode>;
  { P::needs_active_tracking } -> std::convertible_to<bool>;
  { P::combine(a, b) } -> std::same_as<typename P::Message>;
} && std::is_trivially_copyable_v<typename P::Message> && std::equality_comparable<typename P::Message>;

/// Programs declaring the neutral element of their combine can run with the
/// pure compare-and-swap combiner.
template <class P>
concept HasNeutralMessage = requires {
  { P::neutral } -> std::convertible_to<typename P::Message>;
};

unsigned default_worker_count();

struct EngineConfig {
  unsigned workers = default_worker_count();
  Schedule schedule = Schedule::StaticVertex;
  std::size_t chunk_size = kDefaultChunkSize;
  LayoutMode layout = LayoutMode::Interleaved;
  Combiner combiner = Combiner::Hybrid;
  std::uint64_t max_supersteps = 10'000;

  void validate() const;
};

struct SuperstepStats {
  std::uint64_t superstep = 0;
  double seconds = 0.0;
  std::uint64_t active = 0;    // vertices that ran compute
  std::uint64_t messages = 0;  // sends (push) or broadcasts (pull)
};

template <class State>
struct RunReport {
  std::vector<SuperstepStats> supersteps;
  double seconds = 0.0;
  std::uint64_t superstep_count = 0;
  bool hit_superstep_cap = false;
  unsigned workers = 0;
  /// Combiner actually used; empty for pull-mode programs.
  std::optional<Combiner> effective_combiner;
  std::vector<State> states;
};

namespace detail {
template <class P, class Store, Combiner C>
class Executor;
}

/// Handle passed to compute()/init() for one vertex.
template <class P, class Exec>
class VertexContext {
 public:
  using State = typename P::State;
  using Message = typename P::Message;

  VertexId id() const noexcept { return v_; }
  std::uint64_t superstep() const noexcept { return exec_.superstep_; }
  VertexId vertex_count() const noexcept { return exec_.n_; }

  State& state() noexcept { return cold_.state; }
  const State& state() const noexcept { return cold_.state; }

  bool has_message() const noexcept { return has_msg_; }
  /// Combined incoming message; only meaningful when has_message().
  Message message() const noexcept { return msg_; }

  void send_message(VertexId dst, Message m)
    requires(P::comm_mode == CommMode::Push)
  {
    exec_.send(local_, dst, m);
  }

  void broadcast(Message m)
    requires(P::comm_mode == CommMode::PullBroadcast)
  {
    exec_.broadcast(local_, v_, cold_, m, !broadcasted_);
    broadcasted_ = true;
  }

  void vote_to_halt() noexcept { cold_.halted = true; }

  VertexId out_degree() const noexcept { return cold_.out_degree; }
  VertexId in_degree() const noexcept { return cold_.in_degree; }
  std::span<const VertexId> out_neighbors() const noexcept {
    return {exec_.g_.out_targets().data() + cold_.out_begin, cold_.out_degree};
  }
  std::span<const VertexId> in_neighbors() const noexcept {
    return {exec_.g_.in_targets().data() + cold_.in_begin, cold_.in_degree};
  }

  /// Adds to this superstep's global sum; read back next superstep via aggregated().
  void contribute(double x) noexcept { local_.contribution += x; }
  double aggregated() const noexcept { return exec_.aggregated_; }

 private:
  friend Exec;
  using Local = typename Exec::Local;

  VertexContext(Exec& exec, Local& local, VertexId v, ColdAttributes<State>& cold, bool has_msg, Message msg)
      : exec_(exec), local_(local), cold_(cold), v_(v), has_msg_(has_msg), msg_(msg) {}

  Exec& exec_;
  Local& local_;
  ColdAttributes<State>& cold_;
  VertexId v_;
  bool has_msg_;
  bool broadcasted_ = false;
  Message msg_;
};

namespace detail {

template <class P, class Store, Combiner C>
class Executor {
 public:
  using State = typename P::State;
  using M = typename P::Message;
  using Context = VertexContext<P, Executor>;

  static constexpr bool kPush = P::comm_mode == CommMode::Push;
  static constexpr bool kTracking = P::needs_active_tracking;

  Executor(const Graph& g, const P& program, const EngineConfig& cfg)
      : g_(g), prog_(program), cfg_(cfg), n_(g.vertex_count()), store_(g) {}

  RunReport<State> run();

 private:
  friend Context;

  struct alignas(64) Local {
    std::vector<VertexId> scheduled;  // activations for the next superstep
    std::vector<VertexId> stay;       // push mode: processed vertices that did not halt
    std::vector<VertexId> broadcast_prev;
    std::vector<VertexId> broadcast_cur;
    std::uint64_t messages = 0;
    std::uint64_t delivered = 0;
    std::uint64_t active = 0;
    std::uint64_t non_halted = 0;
    double contribution = 0.0;
  };

  using clock = std::chrono::steady_clock;

  static M combine(M a, M b) { return P::combine(a, b); }

  void init_vertex(Local& me, VertexId v);
  void finish_init();
  void compute_phase(unsigned t, Local& me);
  void process(Local& me, VertexId v);
  void end_superstep();
  void prepare_partition();

  void send(Local& me, VertexId dst, M m);
  void broadcast(Local& me, VertexId v, ColdAttributes<State>& cold, M m, bool first_time);
  void schedule(Local& me, VertexId v) {
    const auto target = static_cast<std::uint32_t>(superstep_ + 1);
    auto& stamp = stamps_[v];
    if (stamp.load(std::memory_order_relaxed) != target &&
        stamp.exchange(target, std::memory_order_relaxed) != target)
      me.scheduled.push_back(v);
  }

  VertexId item(std::size_t i) const noexcept {
    if constexpr (kTracking) return active_[i];
    else return static_cast<VertexId>(i);
  }

  const Graph& g_;
  const P& prog_;
  const EngineConfig& cfg_;
  VertexId n_;
  Store store_;

  unsigned team_ = 1;
  std::vector<Local> locals_;
  std::unique_ptr<std::atomic<std::uint32_t>[]> stamps_;
  std::vector<VertexId> active_;
  std::vector<VertexId> next_active_;
  std::vector<EdgeId> prefix_;
  DegreeStats degrees_;
  WorkPartition partition_;
  bool partition_fixed_ = false;
  ChunkQueue queue_;

  unsigned cur_ = 0;  // buffer read this superstep
  unsigned nxt_ = 1;  // buffer written this superstep
  std::uint64_t superstep_ = 0;
  bool initialising_ = true;
  bool done_ = false;
  bool cap_hit_ = false;
  double aggregated_ = 0.0;

  clock::time_point mark_;
  std::vector<SuperstepStats> stats_;
};

template <class P, class Store, Combiner C>
RunReport<typename P::State> Executor<P, Store, C>::run() {
  RunReport<State> report;
  if constexpr (kPush) report.effective_combiner = C;
  const auto start = clock::now();
  if (n_ == 0) return report;

  locals_ = std::vector<Local>(cfg_.workers);
  if constexpr (!kPush && kTracking) stamps_ = std::make_unique<std::atomic<std::uint32_t>[]>(n_);
  if constexpr (C == Combiner::Cas) {
    for (VertexId v = 0; v < n_; ++v) {
      store_.cell_in(v, 0).store(M(P::neutral));
      store_.cell_in(v, 1).store(M(P::neutral));
    }
  }
  if (cfg_.schedule == Schedule::EdgeBalanced) degrees_ = degree_prefix_sums(g_, kPush ? Direction::Out : Direction::In);
  if constexpr (kTracking) {
    active_.resize(n_);
    std::iota(active_.begin(), active_.end(), VertexId{0});
  }

  // init() writes into the buffer that superstep 0 reads
  store_.swap_buffers();
  cur_ = store_.current_index();
  nxt_ = cur_ ^ 1;

  omp_set_dynamic(0);
#pragma omp parallel num_threads(cfg_.workers)
  {
    const auto t = static_cast<unsigned>(omp_get_thread_num());
    Local& me = locals_[t];

#pragma omp for schedule(static)
    for (std::int64_t v = 0; v < static_cast<std::int64_t>(n_); ++v) init_vertex(me, static_cast<VertexId>(v));

#pragma omp single
    finish_init();

    while (!done_) {
      // end_superstep() may swap buffers while other threads are still clearing
      const unsigned read_buffer = cur_;
      compute_phase(t, me);
#pragma omp barrier
      if constexpr (!kPush) {
        // last superstep's broadcasts were read by this one; clear them before reuse
        for (VertexId v : me.broadcast_prev) store_.cell_in(v, read_buffer).has_msg.store(false);
        me.broadcast_prev.swap(me.broadcast_cur);
        me.broadcast_cur.clear();
      }
      if constexpr (kPush && kTracking && C == Combiner::Cas) {
        // no flag to consult: a mailbox holding a non-neutral value counts as a delivery
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(n_); ++i) {
          const auto v = static_cast<VertexId>(i);
          if (store_.cell_in(v, nxt_).load() != M(P::neutral) || !store_.cold_unchecked(v).halted)
            me.scheduled.push_back(v);
        }
      }
#pragma omp single
      end_superstep();
    }
  }

  report.supersteps = std::move(stats_);
  report.superstep_count = superstep_;
  report.hit_superstep_cap = cap_hit_;
  report.workers = team_;
  report.states.resize(n_);
  for (VertexId v = 0; v < n_; ++v) report.states[v] = store_.cold_unchecked(v).state;
  report.seconds = std::chrono::duration<double>(clock::now() - start).count();
  return report;
}

template <class P, class Store, Combiner C>
void Executor<P, Store, C>::init_vertex(Local& me, VertexId v) {
  auto& cold = store_.cold_unchecked(v);
  if constexpr (requires(const P& p, Context& c) { p.init(c); }) {
    Context ctx(*this, me, v, cold, false, M{});
    prog_.init(ctx);
  }
  cold.halted = false;
}

template <class P, class Store, Combiner C>
void Executor<P, Store, C>::finish_init() {
  team_ = static_cast<unsigned>(omp_get_num_threads());
  double total = 0.0;
  for (Local& l : locals_) {
    total += l.contribution;
    l.contribution = 0.0;
    l.messages = l.delivered = l.active = l.non_halted = 0;
    l.scheduled.clear();
    l.broadcast_prev.swap(l.broadcast_cur);
    l.broadcast_cur.clear();
  }
  aggregated_ = total;
  initialising_ = false;
  store_.swap_buffers();
  cur_ = store_.current_index();
  nxt_ = cur_ ^ 1;
  prepare_partition();
  mark_ = clock::now();
}

template <class P, class Store, Combiner C>
void Executor<P, Store, C>::prepare_partition() {
  const std::size_t n_items = kTracking ? active_.size() : n_;
  switch (cfg_.schedule) {
    case Schedule::StaticVertex:
      if (!partition_fixed_) partition_ = static_partition(n_items, team_);
      break;
    case Schedule::DynamicChunk:
      queue_.reset(n_items, cfg_.chunk_size);
      break;
    case Schedule::EdgeBalanced:
      if constexpr (kTracking) {
        // recomputed every superstep over the current active list
        prefix_.resize(n_items);
        const auto offsets = kPush ? g_.out_offsets() : g_.in_offsets();
        EdgeId running = 0;
        for (std::size_t i = 0; i < n_items; ++i) {
          const VertexId v = active_[i];
          running += offsets[v + 1] - offsets[v];
          prefix_[i] = running;
        }
        partition_ = partition_by_prefix(prefix_, team_);
      } else if (!partition_fixed_) {
        partition_ = partition_by_prefix(degrees_.prefix, team_);
      }
      break;
  }
  partition_fixed_ = !kTracking;
}

template <class P, class Store, Combiner C>
void Executor<P, Store, C>::compute_phase(unsigned t, Local& me) {
  if (cfg_.schedule == Schedule::DynamicChunk) {
    while (auto r = queue_.claim())
      for (std::size_t i = r->begin; i < r->end; ++i) process(me, item(i));
  } else {
    const Range r = partition_.chunk(t);
    for (std::size_t i = r.begin; i < r.end; ++i) process(me, item(i));
  }
}

template <class P, class Store, Combiner C>
void Executor<P, Store, C>::process(Local& me, VertexId v) {
  auto& cold = store_.cold_unchecked(v);
  bool has_msg = false;
  M msg{};
  if constexpr (kPush) {
    auto& cell = store_.cell_in(v, cur_);
    std::optional<M> got;
    if constexpr (C == Combiner::Cas) got = read_and_consume_preset(cell, M(P::neutral));
    else got = read_and_consume(cell);
    if (got) {
      has_msg = true;
      msg = *got;
    }
  } else {
    // pull: fold the flagged broadcasts of in-neighbours, touching only their hot cells
    const VertexId* nb = g_.in_targets().data() + cold.in_begin;
    for (VertexId i = 0; i < cold.in_degree; ++i) {
      const auto& cell = store_.cell_in(nb[i], cur_);
      if (cell.has_msg.load()) {
        const M x = cell.load();
        msg = has_msg ? P::combine(msg, x) : x;
        has_msg = true;
      }
    }
  }

  if constexpr (!kTracking) {
    if (cold.halted && !has_msg) return;
  }
  cold.halted = false;
  ++me.active;

  Context ctx(*this, me, v, cold, has_msg, msg);
  prog_.compute(ctx);

  if (!cold.halted) {
    ++me.non_halted;
    if constexpr (kTracking) {
      if constexpr (!kPush) schedule(me, v);
      else if constexpr (C != Combiner::Cas) me.stay.push_back(v);
    }
  }
}

template <class P, class Store, Combiner C>
void Executor<P, Store, C>::send(Local& me, VertexId dst, M m) {
  ++me.messages;
  auto& cell = store_.cell_in(dst, nxt_);
  bool first = false;
  if constexpr (C == Combiner::Lock) {
    first = send_lock(cell, store_.lock(dst), m, combine);
  } else if constexpr (C == Combiner::Hybrid) {
    first = send_hybrid(cell, store_.lock(dst), m, combine);
  } else {
    send_cas_preset(cell, m, combine);
  }
  if constexpr (kTracking && C != Combiner::Cas) {
    // exactly one sender publishes the first message, so no duplicates
    if (first && !initialising_) me.scheduled.push_back(dst);
  }
}

template <class P, class Store, Combiner C>
void Executor<P, Store, C>::broadcast(Local& me, VertexId v, ColdAttributes<State>& cold, M m, bool first_time) {
  auto& cell = store_.cell_in(v, nxt_);
  cell.store(m);
  cell.has_msg.store(true);
  if (!first_time) return;
  me.broadcast_cur.push_back(v);
  ++me.messages;
  if (cold.out_degree == 0) return;
  ++me.delivered;
  if constexpr (kTracking) {
    if (initialising_) return;
    const VertexId* nb = g_.out_targets().data() + cold.out_begin;
    for (VertexId i = 0; i < cold.out_degree; ++i) schedule(me, nb[i]);
  }
}

template <class P, class Store, Combiner C>
void Executor<P, Store, C>::end_superstep() {
  const auto now = clock::now();
  SuperstepStats st;
  st.superstep = superstep_;
  st.seconds = std::chrono::duration<double>(now - mark_).count();
  mark_ = now;

  std::uint64_t non_halted = 0, delivered = 0;
  double total = 0.0;
  for (Local& l : locals_) {
    st.active += l.active;
    st.messages += l.messages;
    non_halted += l.non_halted;
    delivered += kPush ? l.messages : l.delivered;
    total += l.contribution;
    l.active = l.messages = l.delivered = l.non_halted = 0;
    l.contribution = 0.0;
  }
  stats_.push_back(st);
  aggregated_ = total;

  if constexpr (kTracking) {
    next_active_.clear();
    for (Local& l : locals_) {
      next_active_.insert(next_active_.end(), l.scheduled.begin(), l.scheduled.end());
      l.scheduled.clear();
    }
    if constexpr (kPush && C != Combiner::Cas) {
      // non-halted vertices that also got a message are already scheduled
      for (Local& l : locals_) {
        for (VertexId v : l.stay)
          if (!store_.cell_in(v, nxt_).has_msg.load()) next_active_.push_back(v);
        l.stay.clear();
      }
    }
    active_.swap(next_active_);
    done_ = active_.empty();
  } else {
    done_ = non_halted == 0 && delivered == 0;
  }

  store_.swap_buffers();
  cur_ = store_.current_index();
  nxt_ = cur_ ^ 1;
  ++superstep_;
  if (!done_ && superstep_ >= cfg_.max_supersteps) {
    cap_hit_ = true;
    done_ = true;
  }
  if (!done_) prepare_partition();
}

}  // namespace detail

/// Runs a program to quiescence (or the superstep cap). Superstep 0 starts
/// with every vertex active. A vertex runs in superstep s+1 iff it received a
/// message in s or did not vote to halt. The final superstep, the one after
/// which nothing is active, is included in the count.
template <VertexProgram P>
RunReport<typename P::State> run(const Graph& g, const P& program, const EngineConfig& cfg) {
  cfg.validate();
  using State = typename P::State;
  using M = typename P::Message;

  Combiner strategy = cfg.combiner;
  if constexpr (!kCasCapable<M>) strategy = Combiner::Lock;
  if (P::comm_mode == CommMode::PullBroadcast) strategy = Combiner::Lock;  // no combiner on the pull path
  if (strategy == Combiner::Cas && !HasNeutralMessage<P>)
    throw ConfigError("the cas combiner needs a program that declares a neutral message value");

  auto with_layout = [&]<Combiner C>() -> RunReport<State> {
    if (cfg.layout == LayoutMode::Interleaved)
      return detail::Executor<P, InterleavedStore<State, M>, C>(g, program, cfg).run();
    return detail::Executor<P, ExternalisedStore<State, M>, C>(g, program, cfg).run();
  };

  if constexpr (kCasCapable<M>) {
    if (strategy == Combiner::Hybrid) return with_layout.template operator()<Combiner::Hybrid>();
    if constexpr (HasNeutralMessage<P>) {
      if (strategy == Combiner::Cas) return with_layout.template operator()<Combiner::Cas>();
    }
  }
  return with_layout.template operator()<Combiner::Lock>();
}

}  // namespace vcp
