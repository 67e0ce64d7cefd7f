#pragma once

#include <atomic>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "vcp/graph.hpp"
#include "vcp/types.hpp"

namespace vcp {

inline constexpr std::size_t kDefaultChunkSize = 256;

enum class Schedule { StaticVertex, DynamicChunk, EdgeBalanced };

std::string_view to_string(Schedule s);
Schedule parse_schedule(std::string_view name);  // "static" | "dynamic" | "edge"

/// Maps the two independent optimisation toggles onto one schedule. Dynamic
/// chunking hands out vertex-count chunks, which defeats an edge-weighted
/// split, so enabling both is rejected.
Schedule schedule_from_toggles(bool edge_centric, bool dynamic);

struct Range {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t size() const { return end - begin; }
  bool empty() const { return begin == end; }
  friend bool operator==(const Range&, const Range&) = default;
};

/// Contiguous chunks over a work list [0, n). bounds has chunk_count()+1 entries.
struct WorkPartition {
  std::vector<std::size_t> bounds{0};
  /// Edge weight per chunk; only filled by the edge-balanced split.
  std::vector<EdgeId> loads;

  std::size_t chunk_count() const { return bounds.size() - 1; }
  Range chunk(std::size_t i) const { return {bounds[i], bounds[i + 1]}; }
};

WorkPartition static_partition(std::size_t n_items, std::size_t n_workers);

/// Splits a work list given the inclusive prefix sums of its item weights into
/// n_workers contiguous chunks. Boundary k is placed, by binary search, at the
/// item edge whose prefix value is nearest to k*total/n_workers. Each chunk
/// load is within max_weight of total/n_workers.
WorkPartition partition_by_prefix(std::span<const EdgeId> inclusive_prefix, std::size_t n_workers);

/// Edge-balanced split of an active list; weights are the degrees in `degrees`.
WorkPartition edge_balanced_partition(std::span<const VertexId> active, const DegreeStats& degrees,
                                      std::size_t n_workers);
/// Same, with every vertex active.
WorkPartition edge_balanced_partition(const DegreeStats& degrees, std::size_t n_workers);

/// First-come-first-served chunk dispenser. claim() is lock-free and may be
/// called from any number of threads; every index in [0, n) is handed out
/// exactly once between resets.
class alignas(64) ChunkQueue {
 public:
  ChunkQueue() = default;
  ChunkQueue(std::size_t n_items, std::size_t chunk_size) { reset(n_items, chunk_size); }

  /// Not thread-safe; call between parallel phases.
  void reset(std::size_t n_items, std::size_t chunk_size);

  std::optional<Range> claim() noexcept {
    const std::size_t begin = next_.fetch_add(chunk_, std::memory_order_relaxed);
    if (begin >= n_) return std::nullopt;
    return Range{begin, begin + chunk_ < n_ ? begin + chunk_ : n_};
  }

  std::size_t size() const noexcept { return n_; }
  std::size_t chunk_size() const noexcept { return chunk_; }

 private:
  std::atomic<std::size_t> next_{0};
  std::size_t n_ = 0;
  std::size_t chunk_ = kDefaultChunkSize;
};

/// The claim sequence a ChunkQueue produces for (n_items, chunk_size).
std::vector<Range> dynamic_chunks(std::size_t n_items, std::size_t chunk_size = kDefaultChunkSize);

}  // namespace vcp
