#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <string_view>
#include <thread>
#include <type_traits>
#include <utility>
#include <vector>

#include "vcp/types.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#endif

namespace vcp {

enum class Combiner { Lock, Cas, Hybrid };

std::string_view to_string(Combiner c);
Combiner parse_combiner(std::string_view name);  // "lock" | "cas" | "hybrid"

/// One-byte test-and-test-and-set lock.
class SpinLock {
 public:
  void lock() noexcept {
    unsigned spins = 0;
    while (flag_.test_and_set(std::memory_order_acquire)) {
      while (flag_.test(std::memory_order_relaxed)) {
        // yield so an oversubscribed holder gets scheduled
        if (++spins > 64) std::this_thread::yield();
        else cpu_relax();
      }
    }
  }
  bool try_lock() noexcept { return !flag_.test_and_set(std::memory_order_acquire); }
  void unlock() noexcept { flag_.clear(std::memory_order_release); }

 private:
  static void cpu_relax() noexcept {
#if defined(__x86_64__) || defined(__i386__)
    _mm_pause();
#endif
  }
  std::atomic_flag flag_;
};

static_assert(sizeof(SpinLock) == 1);

/// Messages that fit in one lock-free atomic word can be combined with CAS.
template <class M>
inline constexpr bool kCasCapable = std::is_trivially_copyable_v<M> && sizeof(M) <= sizeof(std::uint64_t) &&
                                    std::atomic<M>::is_always_lock_free;

/// The {has message, message} pair of one mailbox.
///
/// Publication: once has_msg reads true, msg holds a fully written value. The
/// flag uses sequentially consistent accesses; msg accesses are ordered by the
/// flag or by the vertex lock.
template <class M>
struct MessageCell {
  static_assert(std::is_trivially_copyable_v<M>);
  using Storage = std::conditional_t<kCasCapable<M>, std::atomic<M>, M>;

  std::atomic<bool> has_msg{false};
  Storage msg{};

  M load() const noexcept {
    if constexpr (kCasCapable<M>) return msg.load(std::memory_order_relaxed);
    else return msg;
  }
  void store(M m) noexcept {
    if constexpr (kCasCapable<M>) msg.store(m, std::memory_order_relaxed);
    else msg = m;
  }
};

/// Lock combiner. Returns true when this call delivered the cell's first message.
template <class M, class Combine>
bool send_lock(MessageCell<M>& cell, SpinLock& lock, M msg, Combine&& combine) {
  lock.lock();
  const bool first = !cell.has_msg.load();
  if (first) {
    cell.store(msg);
    cell.has_msg.store(true);
  } else {
    cell.store(combine(cell.load(), msg));
  }
  lock.unlock();
  return first;
}

/// Lock-free fold into a cell whose value is already published. Skips the
/// atomic write when combining leaves the value unchanged. Returns whether a
/// compare-exchange succeeded.
template <class M, class Combine>
  requires kCasCapable<M>
bool apply_cas(MessageCell<M>& cell, M msg, Combine&& combine) {
  M old_msg = cell.msg.load();
  M new_msg = combine(old_msg, msg);
  while (new_msg != old_msg) {
    if (cell.msg.compare_exchange_strong(old_msg, new_msg)) return true;
    // old_msg now holds the competing value
    new_msg = combine(old_msg, msg);
  }
  return false;
}

/// Hybrid combiner: CAS once the mailbox holds a message, the vertex lock only
/// for the first message. Returns true when this call delivered the first message.
template <class M, class Combine>
  requires kCasCapable<M>
bool send_hybrid(MessageCell<M>& cell, SpinLock& lock, M msg, Combine&& combine) {
  if (cell.has_msg.load()) {
    apply_cas(cell, msg, combine);
    return false;
  }
  lock.lock();
  if (cell.has_msg.load()) {
    lock.unlock();
    apply_cas(cell, msg, combine);
    return false;
  }
  // message first, then the flag; the seq_cst flag store orders the two
  cell.msg.store(msg, std::memory_order_relaxed);
  cell.has_msg.store(true);
  lock.unlock();
  return true;
}

/// Pure compare-and-swap baseline. The cell must be pre-filled with the
/// combine's neutral value; the flag is not used.
template <class M, class Combine>
  requires kCasCapable<M>
void send_cas_preset(MessageCell<M>& cell, M msg, Combine&& combine) {
  apply_cas(cell, msg, std::forward<Combine>(combine));
}

/// Takes the message out of a cell, if any, leaving it empty.
template <class M>
std::optional<M> read_and_consume(MessageCell<M>& cell) {
  if (!cell.has_msg.load()) return std::nullopt;
  M m = cell.load();
  cell.has_msg.store(false);
  return m;
}

/// Neutral-preset variant: a value equal to `neutral` reads as "no message".
/// Resets the cell to `neutral`.
template <class M>
std::optional<M> read_and_consume_preset(MessageCell<M>& cell, M neutral) {
  M m = cell.load();
  if (m == neutral) return std::nullopt;
  cell.store(neutral);
  return m;
}

template <class M>
struct MailboxSlot {
  MessageCell<M> cell;
  SpinLock lock;
};

/// Double-buffered mailboxes: senders write next(), the owner reads current().
/// swap_buffers() needs a global barrier with no sends or reads in flight.
template <class M>
class MailboxArray {
 public:
  explicit MailboxArray(VertexId n) : n_(n), buffers_{std::vector<MailboxSlot<M>>(n), std::vector<MailboxSlot<M>>(n)} {}

  VertexId size() const noexcept { return n_; }

  MailboxSlot<M>& current(VertexId v) { return buffers_[cur_][v]; }
  MailboxSlot<M>& next(VertexId v) { return buffers_[cur_ ^ 1][v]; }

  template <class Combine>
  bool send(Combiner strategy, VertexId dst, M msg, Combine&& combine) {
    auto& slot = next(dst);
    switch (strategy) {
      case Combiner::Lock: return send_lock(slot.cell, slot.lock, msg, combine);
      case Combiner::Hybrid:
        if constexpr (kCasCapable<M>) return send_hybrid(slot.cell, slot.lock, msg, combine);
        else return send_lock(slot.cell, slot.lock, msg, combine);
      case Combiner::Cas:
        if constexpr (kCasCapable<M>) {
          send_cas_preset(slot.cell, msg, combine);
          return false;
        } else {
          return send_lock(slot.cell, slot.lock, msg, combine);
        }
    }
    return false;
  }

  std::optional<M> read_and_consume(VertexId v) { return vcp::read_and_consume(current(v).cell); }

  void swap_buffers() noexcept { cur_ ^= 1; }
  unsigned current_index() const noexcept { return cur_; }

 private:
  VertexId n_;
  std::vector<MailboxSlot<M>> buffers_[2];
  unsigned cur_ = 0;
};

}  // namespace vcp
