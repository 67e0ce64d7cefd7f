#include "vcp/scheduler.hpp"

#include <algorithm>
#include <string>

namespace vcp {

std::string_view to_string(Schedule s) {
  switch (s) {
    case Schedule::StaticVertex: return "static";
    case Schedule::DynamicChunk: return "dynamic";
    case Schedule::EdgeBalanced: return "edge";
  }
  return "?";
}

Schedule parse_schedule(std::string_view name) {
  if (name == "static") return Schedule::StaticVertex;
  if (name == "dynamic") return Schedule::DynamicChunk;
  if (name == "edge") return Schedule::EdgeBalanced;
  throw ConfigError("unknown scheduler '" + std::string(name) + "' (expected static, dynamic or edge)");
}

Schedule schedule_from_toggles(bool edge_centric, bool dynamic) {
  if (edge_centric && dynamic)
    throw ConfigError("edge-centric partitioning and dynamic chunking are mutually exclusive");
  if (edge_centric) return Schedule::EdgeBalanced;
  if (dynamic) return Schedule::DynamicChunk;
  return Schedule::StaticVertex;
}

WorkPartition static_partition(std::size_t n_items, std::size_t n_workers) {
  if (n_workers == 0) throw ConfigError("worker count must be at least 1");
  WorkPartition p;
  p.bounds.resize(n_workers + 1);
  const std::size_t base = n_items / n_workers;
  const std::size_t extra = n_items % n_workers;
  p.bounds[0] = 0;
  for (std::size_t w = 0; w < n_workers; ++w) p.bounds[w + 1] = p.bounds[w] + base + (w < extra ? 1 : 0);
  return p;
}

WorkPartition partition_by_prefix(std::span<const EdgeId> prefix, std::size_t n_workers) {
  if (n_workers == 0) throw ConfigError("worker count must be at least 1");
  const std::size_t n = prefix.size();
  const EdgeId total = n ? prefix.back() : 0;
  const auto W = static_cast<unsigned __int128>(n_workers);

  WorkPartition p;
  p.bounds.assign(n_workers + 1, 0);
  p.bounds[n_workers] = n;
  for (std::size_t k = 1; k < n_workers; ++k) {
    // target t_k = k*total/W, compared exactly as prefix*W against k*total.
    const auto target = static_cast<unsigned __int128>(k) * total;
    const auto it = std::partition_point(prefix.begin(), prefix.end(),
                                         [&](EdgeId x) { return static_cast<unsigned __int128>(x) * W < target; });
    const auto i = static_cast<std::size_t>(it - prefix.begin());
    std::size_t b = std::min(i + 1, n);
    if (i < n) {
      // item i straddles the target; cut before it when that edge is strictly closer.
      const auto before = static_cast<unsigned __int128>(i ? prefix[i - 1] : 0) * W;
      const auto after = static_cast<unsigned __int128>(prefix[i]) * W;
      if (target - before < after - target) b = i;
    }
    p.bounds[k] = std::max(b, p.bounds[k - 1]);
  }

  p.loads.resize(n_workers);
  for (std::size_t k = 0; k < n_workers; ++k) {
    const EdgeId hi = p.bounds[k + 1] ? prefix[p.bounds[k + 1] - 1] : 0;
    const EdgeId lo = p.bounds[k] ? prefix[p.bounds[k] - 1] : 0;
    p.loads[k] = hi - lo;
  }
  return p;
}

WorkPartition edge_balanced_partition(std::span<const VertexId> active, const DegreeStats& degrees,
                                      std::size_t n_workers) {
  std::vector<EdgeId> prefix(active.size());
  EdgeId running = 0;
  for (std::size_t i = 0; i < active.size(); ++i) {
    running += degrees.degree(active[i]);
    prefix[i] = running;
  }
  return partition_by_prefix(prefix, n_workers);
}

WorkPartition edge_balanced_partition(const DegreeStats& degrees, std::size_t n_workers) {
  return partition_by_prefix(degrees.prefix, n_workers);
}

void ChunkQueue::reset(std::size_t n_items, std::size_t chunk_size) {
  if (chunk_size == 0) throw ConfigError("chunk size must be at least 1");
  n_ = n_items;
  chunk_ = chunk_size;
  next_.store(0, std::memory_order_relaxed);
}

std::vector<Range> dynamic_chunks(std::size_t n_items, std::size_t chunk_size) {
  ChunkQueue q(n_items, chunk_size);
  std::vector<Range> out;
  while (auto r = q.claim()) out.push_back(*r);
  return out;
}

}  // namespace vcp
