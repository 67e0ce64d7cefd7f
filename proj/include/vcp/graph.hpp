#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "vcp/types.hpp"

namespace vcp {

struct Edge {
  VertexId src;
  VertexId dst;
};

/// Immutable CSR adjacency with both edge directions over dense ids.
///
/// Neighbour runs are sorted ascending. Every out-edge (u,v) has exactly one
/// matching in-edge entry u in in_neighbors(v). Undirected graphs store each
/// input edge in both directions, so edge_count() is twice the input edge count.
class Graph {
 public:
  Graph() = default;

  /// Builds from an edge list; ids must already be dense in [0, vertex_count).
  static Graph from_edges(VertexId vertex_count, std::span<const Edge> edges, bool undirected,
                          std::vector<std::uint64_t> id_map = {});

  /// Adopts an out-view CSR (targets sorted per vertex) and derives the in-view.
  static Graph from_out_csr(std::vector<EdgeId> out_offsets, std::vector<VertexId> out_targets,
                            bool undirected, std::vector<std::uint64_t> id_map = {});

  VertexId vertex_count() const noexcept { return vertex_count_; }
  EdgeId edge_count() const noexcept { return out_targets_.size(); }
  bool undirected() const noexcept { return undirected_; }

  // Checked accessors; throw std::out_of_range for v >= vertex_count().
  std::span<const VertexId> out_neighbors(VertexId v) const;
  std::span<const VertexId> in_neighbors(VertexId v) const;
  std::span<const VertexId> neighbors(VertexId v, Direction d) const {
    return d == Direction::Out ? out_neighbors(v) : in_neighbors(v);
  }
  VertexId out_degree(VertexId v) const { return static_cast<VertexId>(out_neighbors(v).size()); }
  VertexId in_degree(VertexId v) const { return static_cast<VertexId>(in_neighbors(v).size()); }

  std::span<const EdgeId> out_offsets() const noexcept { return out_offsets_; }
  std::span<const VertexId> out_targets() const noexcept { return out_targets_; }
  std::span<const EdgeId> in_offsets() const noexcept { return in_offsets_; }
  std::span<const VertexId> in_targets() const noexcept { return in_targets_; }

  /// dense id -> id in the source file; empty when ids were not remapped.
  const std::vector<std::uint64_t>& id_map() const noexcept { return id_map_; }
  std::uint64_t original_id(VertexId v) const { return id_map_.empty() ? v : id_map_.at(v); }

  /// Union of both directions, keeping multiplicity of the out-view. Returns a
  /// copy of *this when already undirected.
  Graph symmetrized() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  VertexId vertex_count_ = 0;
  bool undirected_ = false;
  std::vector<EdgeId> out_offsets_{0};
  std::vector<VertexId> out_targets_;
  std::vector<EdgeId> in_offsets_{0};
  std::vector<VertexId> in_targets_;
  std::vector<std::uint64_t> id_map_;
};

namespace csr {

struct Adjacency {
  std::vector<EdgeId> offsets;
  std::vector<VertexId> targets;

  friend bool operator==(const Adjacency&, const Adjacency&) = default;
};

/// Counting-sort transpose. Output runs come out sorted by source id.
Adjacency transpose(VertexId vertex_count, std::span<const EdgeId> offsets, std::span<const VertexId> targets);

}  // namespace csr

struct LoadOptions {
  bool undirected = true;
  /// Largest number of distinct vertices accepted before reporting overflow.
  std::uint64_t max_vertices = std::uint64_t{kMaxVertexId};
};

/// SNAP-style edge list: "src dst" per line, '#' comments, extra tokens ignored.
/// Ids are densified in order of first appearance.
Graph parse_edge_list(std::string_view text, const LoadOptions& options = {});
Graph load_edge_list(const std::filesystem::path& path, const LoadOptions& options = {});

// Binary CSR cache. Layout, all little-endian:
//   "VCSR" | u32 version | u64 vertex_count | u64 edge_count |
//   u64 out_offsets[n+1] | u32 out_targets[m] | u64 in_offsets[n+1] | u32 in_targets[m]
// The id map, when present, goes to a sidecar file "<path>.ids" (u64[n]).
inline constexpr std::uint32_t kCsrCacheVersion = 1;

void write_csr_cache(const Graph& g, const std::filesystem::path& path);
Graph read_csr_cache(const std::filesystem::path& path, bool undirected);

/// Environment variable naming the CSR cache directory.
inline constexpr const char* kCacheDirEnv = "VCP_CSR_CACHE_DIR";

/// Loads through the binary cache when a cache directory is given (or set via
/// VCP_CSR_CACHE_DIR). A cache file older than the source is rebuilt.
Graph load_graph(const std::filesystem::path& path, const LoadOptions& options = {},
                 std::optional<std::filesystem::path> cache_dir = std::nullopt);

struct DegreeStats {
  VertexId min_degree = 0;
  VertexId max_degree = 0;
  double mean_degree = 0.0;
  /// prefix[i] = sum of degrees of vertices 0..i inclusive.
  std::vector<EdgeId> prefix;

  EdgeId degree(VertexId v) const { return prefix[v] - (v == 0 ? 0 : prefix[v - 1]); }
  EdgeId total() const { return prefix.empty() ? 0 : prefix.back(); }
};

DegreeStats degree_prefix_sums(const Graph& g, Direction d = Direction::Out);

}  // namespace vcp
