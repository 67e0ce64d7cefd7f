#include "vcp/graph.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace vcp {

namespace {

void check_csr(VertexId n, std::span<const EdgeId> offsets, std::span<const VertexId> targets) {
  if (offsets.size() != std::size_t{n} + 1 || offsets.front() != 0 || offsets.back() != targets.size())
    throw std::invalid_argument("CSR offsets do not match vertex/edge counts");
  if (!std::is_sorted(offsets.begin(), offsets.end()))
    throw std::invalid_argument("CSR offsets are not monotone");
  for (VertexId t : targets)
    if (t >= n) throw std::invalid_argument("CSR target out of range");
}

}  // namespace

namespace csr {

Adjacency transpose(VertexId n, std::span<const EdgeId> offsets, std::span<const VertexId> targets) {
  Adjacency out;
  out.offsets.assign(std::size_t{n} + 1, 0);
  for (VertexId t : targets) ++out.offsets[std::size_t{t} + 1];
  std::partial_sum(out.offsets.begin(), out.offsets.end(), out.offsets.begin());

  out.targets.resize(targets.size());
  std::vector<EdgeId> cursor(out.offsets.begin(), out.offsets.end() - 1);
  for (VertexId u = 0; u < n; ++u)
    for (EdgeId e = offsets[u]; e < offsets[u + 1]; ++e) out.targets[cursor[targets[e]]++] = u;
  return out;
}

}  // namespace csr

Graph Graph::from_edges(VertexId n, std::span<const Edge> edges, bool undirected,
                        std::vector<std::uint64_t> id_map) {
  std::vector<EdgeId> offsets(std::size_t{n} + 1, 0);
  for (const Edge& e : edges) {
    if (e.src >= n || e.dst >= n) throw std::invalid_argument("edge endpoint out of range");
    ++offsets[std::size_t{e.src} + 1];
    if (undirected) ++offsets[std::size_t{e.dst} + 1];
  }
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());

  std::vector<VertexId> targets(offsets.back());
  std::vector<EdgeId> cursor(offsets.begin(), offsets.end() - 1);
  for (const Edge& e : edges) {
    targets[cursor[e.src]++] = e.dst;
    if (undirected) targets[cursor[e.dst]++] = e.src;
  }
  for (VertexId v = 0; v < n; ++v)
    std::sort(targets.begin() + static_cast<std::ptrdiff_t>(offsets[v]),
              targets.begin() + static_cast<std::ptrdiff_t>(offsets[v + 1]));

  return from_out_csr(std::move(offsets), std::move(targets), undirected, std::move(id_map));
}

Graph Graph::from_out_csr(std::vector<EdgeId> out_offsets, std::vector<VertexId> out_targets,
                          bool undirected, std::vector<std::uint64_t> id_map) {
  if (out_offsets.empty()) throw std::invalid_argument("CSR offsets must have at least one entry");
  if (out_offsets.size() - 1 > std::size_t{kMaxVertexId}) throw std::invalid_argument("too many vertices");
  const auto n = static_cast<VertexId>(out_offsets.size() - 1);
  check_csr(n, out_offsets, out_targets);
  if (!id_map.empty() && id_map.size() != n) throw std::invalid_argument("id map size mismatch");

  Graph g;
  g.vertex_count_ = n;
  g.undirected_ = undirected;
  auto in = csr::transpose(n, out_offsets, out_targets);
  g.out_offsets_ = std::move(out_offsets);
  g.out_targets_ = std::move(out_targets);
  g.in_offsets_ = std::move(in.offsets);
  g.in_targets_ = std::move(in.targets);
  g.id_map_ = std::move(id_map);
  return g;
}

std::span<const VertexId> Graph::out_neighbors(VertexId v) const {
  if (v >= vertex_count_) throw std::out_of_range("vertex id out of range");
  return {out_targets_.data() + out_offsets_[v], out_targets_.data() + out_offsets_[v + 1]};
}

std::span<const VertexId> Graph::in_neighbors(VertexId v) const {
  if (v >= vertex_count_) throw std::out_of_range("vertex id out of range");
  return {in_targets_.data() + in_offsets_[v], in_targets_.data() + in_offsets_[v + 1]};
}

Graph Graph::symmetrized() const {
  if (undirected_) return *this;
  std::vector<Edge> edges;
  edges.reserve(out_targets_.size());
  for (VertexId u = 0; u < vertex_count_; ++u)
    for (EdgeId e = out_offsets_[u]; e < out_offsets_[u + 1]; ++e) edges.push_back({u, out_targets_[e]});
  return from_edges(vertex_count_, edges, true, id_map_);
}

// ---------------------------------------------------------------------------
// Text edge lists

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

}  // namespace

Graph parse_edge_list(std::string_view text, const LoadOptions& options) {
  std::unordered_map<std::uint64_t, VertexId> dense;
  std::vector<std::uint64_t> id_map;
  std::vector<Edge> edges;

  auto densify = [&](std::uint64_t raw, std::uint64_t line_no) -> VertexId {
    auto [it, inserted] = dense.try_emplace(raw, static_cast<VertexId>(id_map.size()));
    if (inserted) {
      if (id_map.size() >= options.max_vertices)
        throw GraphLoadError("vertex count exceeds the configured id width", line_no);
      id_map.push_back(raw);
    }
    return it->second;
  };

  std::uint64_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    std::size_t i = 0;
    while (i < line.size() && is_space(line[i])) ++i;
    if (i == line.size() || line[i] == '#') continue;

    std::uint64_t ids[2];
    for (int k = 0; k < 2; ++k) {
      while (i < line.size() && is_space(line[i])) ++i;
      const char* first = line.data() + i;
      const char* last = line.data() + line.size();
      auto [ptr, ec] = std::from_chars(first, last, ids[k]);
      if (ec != std::errc() || ptr == first || (ptr != last && !is_space(*ptr)))
        throw GraphLoadError("expected two non-negative integer vertex ids", line_no);
      i = static_cast<std::size_t>(ptr - line.data());
    }
    VertexId u = densify(ids[0], line_no);
    VertexId v = densify(ids[1], line_no);
    edges.push_back({u, v});
  }

  const auto n = static_cast<VertexId>(id_map.size());
  bool identity = true;
  for (VertexId v = 0; v < n && identity; ++v) identity = id_map[v] == v;
  if (identity) id_map.clear();
  return Graph::from_edges(n, edges, options.undirected, std::move(id_map));
}

Graph load_edge_list(const std::filesystem::path& path, const LoadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GraphLoadError("cannot open " + path.string());
  std::string text;
  in.seekg(0, std::ios::end);
  const auto size = in.tellg();
  if (size < 0) throw GraphLoadError("cannot read " + path.string());
  text.resize(static_cast<std::size_t>(size));
  in.seekg(0);
  if (!in.read(text.data(), size)) throw GraphLoadError("cannot read " + path.string());
  return parse_edge_list(text, options);
}

// ---------------------------------------------------------------------------
// Binary cache

namespace {

constexpr char kMagic[4] = {'V', 'C', 'S', 'R'};

template <class T>
void write_le(std::ostream& out, std::span<const T> values) {
  if constexpr (std::endian::native == std::endian::little) {
    out.write(reinterpret_cast<const char*>(values.data()),
              static_cast<std::streamsize>(values.size_bytes()));
  } else {
    for (T v : values) {
      unsigned char bytes[sizeof(T)];
      std::memcpy(bytes, &v, sizeof(T));
      std::reverse(bytes, bytes + sizeof(T));
      out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
    }
  }
}

template <class T>
void write_le(std::ostream& out, T value) {
  write_le(out, std::span<const T>(&value, 1));
}

template <class T>
void read_le(std::istream& in, std::span<T> values, const std::filesystem::path& path) {
  if (!in.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(values.size_bytes())))
    throw GraphLoadError("truncated CSR cache " + path.string());
  if constexpr (std::endian::native != std::endian::little) {
    for (T& v : values) {
      auto* bytes = reinterpret_cast<unsigned char*>(&v);
      std::reverse(bytes, bytes + sizeof(T));
    }
  }
}

template <class T>
T read_le(std::istream& in, const std::filesystem::path& path) {
  T value{};
  read_le(in, std::span<T>(&value, 1), path);
  return value;
}

std::filesystem::path ids_path(const std::filesystem::path& path) {
  auto p = path;
  p += ".ids";
  return p;
}

}  // namespace

void write_csr_cache(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw GraphLoadError("cannot write " + path.string());
  out.write(kMagic, sizeof(kMagic));
  write_le<std::uint32_t>(out, kCsrCacheVersion);
  write_le<std::uint64_t>(out, g.vertex_count());
  write_le<std::uint64_t>(out, g.edge_count());
  write_le(out, g.out_offsets());
  write_le(out, g.out_targets());
  write_le(out, g.in_offsets());
  write_le(out, g.in_targets());
  if (!out) throw GraphLoadError("failed writing " + path.string());

  const auto ids = ids_path(path);
  if (!g.id_map().empty()) {
    std::ofstream id_out(ids, std::ios::binary | std::ios::trunc);
    write_le(id_out, std::span<const std::uint64_t>(g.id_map()));
    if (!id_out) throw GraphLoadError("failed writing " + ids.string());
  } else {
    std::error_code ec;
    std::filesystem::remove(ids, ec);
  }
}

Graph read_csr_cache(const std::filesystem::path& path, bool undirected) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GraphLoadError("cannot open " + path.string());
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0)
    throw GraphLoadError("not a CSR cache file: " + path.string());
  const auto version = read_le<std::uint32_t>(in, path);
  if (version != kCsrCacheVersion)
    throw GraphLoadError("unsupported CSR cache version " + std::to_string(version));
  const auto n = read_le<std::uint64_t>(in, path);
  const auto m = read_le<std::uint64_t>(in, path);
  if (n > kMaxVertexId) throw GraphLoadError("CSR cache vertex count exceeds id width");

  std::vector<EdgeId> out_offsets(n + 1), in_offsets(n + 1);
  std::vector<VertexId> out_targets(m), in_targets(m);
  read_le(in, std::span<EdgeId>(out_offsets), path);
  read_le(in, std::span<VertexId>(out_targets), path);
  read_le(in, std::span<EdgeId>(in_offsets), path);
  read_le(in, std::span<VertexId>(in_targets), path);

  std::vector<std::uint64_t> id_map;
  if (std::ifstream id_in(ids_path(path), std::ios::binary); id_in) {
    id_map.resize(n);
    read_le(id_in, std::span<std::uint64_t>(id_map), ids_path(path));
  }

  Graph g;
  try {
    g = Graph::from_out_csr(std::move(out_offsets), std::move(out_targets), undirected, std::move(id_map));
  } catch (const std::invalid_argument& e) {
    throw GraphLoadError(std::string("corrupt CSR cache: ") + e.what());
  }
  if (!std::equal(g.in_offsets().begin(), g.in_offsets().end(), in_offsets.begin()) ||
      !std::equal(g.in_targets().begin(), g.in_targets().end(), in_targets.begin()))
    throw GraphLoadError("corrupt CSR cache: in-view is not the transpose of the out-view");
  return g;
}

Graph load_graph(const std::filesystem::path& path, const LoadOptions& options,
                 std::optional<std::filesystem::path> cache_dir) {
  if (!cache_dir) {
    if (const char* env = std::getenv(kCacheDirEnv); env && *env) cache_dir = env;
  }
  if (!cache_dir) return load_edge_list(path, options);

  std::error_code ec;
  std::filesystem::create_directories(*cache_dir, ec);
  auto cache = *cache_dir / path.filename();
  cache += options.undirected ? ".u.vcsr" : ".d.vcsr";

  if (std::filesystem::exists(cache, ec) &&
      std::filesystem::last_write_time(cache, ec) >= std::filesystem::last_write_time(path, ec))
    return read_csr_cache(cache, options.undirected);

  Graph g = load_edge_list(path, options);
  write_csr_cache(g, cache);
  return g;
}

DegreeStats degree_prefix_sums(const Graph& g, Direction d) {
  DegreeStats stats;
  const VertexId n = g.vertex_count();
  if (n == 0) return stats;
  auto offsets = d == Direction::Out ? g.out_offsets() : g.in_offsets();
  stats.prefix.resize(n);
  stats.min_degree = std::numeric_limits<VertexId>::max();
  for (VertexId v = 0; v < n; ++v) {
    const auto deg = static_cast<VertexId>(offsets[v + 1] - offsets[v]);
    stats.min_degree = std::min(stats.min_degree, deg);
    stats.max_degree = std::max(stats.max_degree, deg);
    stats.prefix[v] = offsets[v + 1];
  }
  stats.mean_degree = static_cast<double>(g.edge_count()) / n;
  return stats;
}

}  // namespace vcp
