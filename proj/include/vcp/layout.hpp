#pragma once

#include <cstddef>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "vcp/graph.hpp"
#include "vcp/mailbox.hpp"
#include "vcp/types.hpp"

namespace vcp {

enum class LayoutMode { Interleaved, Externalised };

std::string_view to_string(LayoutMode m);
LayoutMode parse_layout(std::string_view name);  // "interleaved" | "external"

enum class Buffer { Current, Next };

/// Everything about a vertex that the message-combination loops do not touch.
template <class State>
struct ColdAttributes {
  State state{};
  EdgeId out_begin = 0;
  EdgeId in_begin = 0;
  VertexId out_degree = 0;
  VertexId in_degree = 0;
  bool halted = false;
  SpinLock lock;
};

template <class M>
struct HotPair {
  bool flag = false;
  M value{};
};

namespace detail {

template <class Cold>
void attach_adjacency(Cold& c, const Graph* g, VertexId v) {
  if (!g) return;
  c.out_begin = g->out_offsets()[v];
  c.in_begin = g->in_offsets()[v];
  c.out_degree = static_cast<VertexId>(g->out_offsets()[v + 1] - c.out_begin);
  c.in_degree = static_cast<VertexId>(g->in_offsets()[v + 1] - c.in_begin);
}

// Accessors shared by both stores; Store provides cell_at(v, buffer_index) and cold_at(v).
template <class Derived, class State, class M>
class StoreBase {
 public:
  using state_type = State;
  using message_type = M;

  VertexId size() const noexcept { return self().n_; }

  HotPair<M> hot_read(VertexId v, Buffer b = Buffer::Current) const {
    check(v);
    const auto& c = self().cell_at(v, index(b));
    HotPair<M> out;
    out.flag = c.has_msg.load();
    if (out.flag) out.value = c.load();
    return out;
  }

  void hot_write(VertexId v, bool flag, M value, Buffer b = Buffer::Current) {
    check(v);
    auto& c = self().cell_at(v, index(b));
    c.store(value);
    c.has_msg.store(flag);
  }

  ColdAttributes<State>& cold(VertexId v) {
    check(v);
    return self().cold_at(v);
  }
  const ColdAttributes<State>& cold(VertexId v) const {
    check(v);
    return self().cold_at(v);
  }

  // Unchecked hot-path accessors for the engine.
  MessageCell<M>& cell(VertexId v, Buffer b) noexcept { return self().cell_at(v, index(b)); }
  const MessageCell<M>& cell(VertexId v, Buffer b) const noexcept { return self().cell_at(v, index(b)); }
  MessageCell<M>& cell_in(VertexId v, unsigned buffer_index) noexcept { return self().cell_at(v, buffer_index); }
  ColdAttributes<State>& cold_unchecked(VertexId v) noexcept { return self().cold_at(v); }
  SpinLock& lock(VertexId v) noexcept { return self().cold_at(v).lock; }

  void swap_buffers() noexcept { cur_ ^= 1; }
  unsigned current_index() const noexcept { return cur_; }

 protected:
  unsigned index(Buffer b) const noexcept { return b == Buffer::Current ? cur_ : cur_ ^ 1; }

 private:
  void check(VertexId v) const {
    if (v >= self().n_) throw std::out_of_range("vertex id out of range");
  }
  Derived& self() noexcept { return static_cast<Derived&>(*this); }
  const Derived& self() const noexcept { return static_cast<const Derived&>(*this); }

  unsigned cur_ = 0;
};

}  // namespace detail

/// One record per vertex holding cold attributes and both mailbox cells.
template <class State, class M>
class InterleavedStore : public detail::StoreBase<InterleavedStore<State, M>, State, M> {
  friend class detail::StoreBase<InterleavedStore<State, M>, State, M>;

 public:
  static constexpr LayoutMode mode = LayoutMode::Interleaved;

  struct Record {
    ColdAttributes<State> cold;
    MessageCell<M> cells[2];
  };

  explicit InterleavedStore(VertexId n, const Graph* g = nullptr) : n_(n), records_(n) {
    for (VertexId v = 0; v < n; ++v) detail::attach_adjacency(records_[v].cold, g, v);
  }
  explicit InterleavedStore(const Graph& g) : InterleavedStore(g.vertex_count(), &g) {}

  std::size_t hot_bytes() const noexcept { return 0; }
  std::size_t cold_bytes() const noexcept { return records_.size() * sizeof(Record); }
  std::size_t record_bytes() const noexcept { return sizeof(Record); }

 private:
  MessageCell<M>& cell_at(VertexId v, unsigned i) noexcept { return records_[v].cells[i]; }
  const MessageCell<M>& cell_at(VertexId v, unsigned i) const noexcept { return records_[v].cells[i]; }
  ColdAttributes<State>& cold_at(VertexId v) noexcept { return records_[v].cold; }
  const ColdAttributes<State>& cold_at(VertexId v) const noexcept { return records_[v].cold; }

  VertexId n_;
  std::vector<Record> records_;
};

/// Hot {flag, value} cells in their own dense arrays (one per buffer); the
/// mailbox cells and the hot array are the same storage. Cold records,
/// including the push-path lock, live in a separate array.
template <class State, class M>
class ExternalisedStore : public detail::StoreBase<ExternalisedStore<State, M>, State, M> {
  friend class detail::StoreBase<ExternalisedStore<State, M>, State, M>;

 public:
  static constexpr LayoutMode mode = LayoutMode::Externalised;
  static_assert(sizeof(MessageCell<M>) <= 64, "hot record must fit in a cache line");

  explicit ExternalisedStore(VertexId n, const Graph* g = nullptr) : n_(n), hot_{HotArray(n), HotArray(n)}, cold_(n) {
    for (VertexId v = 0; v < n; ++v) detail::attach_adjacency(cold_[v], g, v);
  }
  explicit ExternalisedStore(const Graph& g) : ExternalisedStore(g.vertex_count(), &g) {}

  std::size_t hot_bytes() const noexcept { return 2 * hot_[0].size() * sizeof(MessageCell<M>); }
  std::size_t cold_bytes() const noexcept { return cold_.size() * sizeof(ColdAttributes<State>); }
  std::size_t record_bytes() const noexcept { return sizeof(MessageCell<M>); }

  const MessageCell<M>* hot_data(unsigned buffer) const noexcept { return hot_[buffer].data(); }
  const ColdAttributes<State>* cold_data() const noexcept { return cold_.data(); }

 private:
  using HotArray = std::vector<MessageCell<M>>;

  MessageCell<M>& cell_at(VertexId v, unsigned i) noexcept { return hot_[i][v]; }
  const MessageCell<M>& cell_at(VertexId v, unsigned i) const noexcept { return hot_[i][v]; }
  ColdAttributes<State>& cold_at(VertexId v) noexcept { return cold_[v]; }
  const ColdAttributes<State>& cold_at(VertexId v) const noexcept { return cold_[v]; }

  VertexId n_;
  HotArray hot_[2];
  std::vector<ColdAttributes<State>> cold_;
};

}  // namespace vcp
