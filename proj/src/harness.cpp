#include "vcp/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "vcp/reference.hpp"

namespace vcp {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

constexpr VertexId kDenseOracleLimit = 2048;
constexpr double kRankTolerance = 1e-9;

template <class T>
void check_exact(std::span<const T> got, const std::vector<T>& want, const char* what) {
  if (got.size() != want.size()) throw ValidationError(std::string(what) + ": result size mismatch");
  for (std::size_t v = 0; v < want.size(); ++v) {
    if (got[v] != want[v]) {
      std::ostringstream os;
      os << what << " mismatch at vertex " << v << ": got " << got[v] << ", expected " << want[v];
      throw ValidationError(os.str());
    }
  }
}

void check_ranks(std::span<const double> got, const std::vector<double>& want) {
  if (got.size() != want.size()) throw ValidationError("pagerank: result size mismatch");
  for (std::size_t v = 0; v < want.size(); ++v) {
    if (std::abs(got[v] - want[v]) > kRankTolerance * std::abs(want[v])) {
      std::ostringstream os;
      os << std::setprecision(17) << "pagerank mismatch at vertex " << v << ": got " << got[v] << ", expected "
         << want[v];
      throw ValidationError(os.str());
    }
  }
}

void write_dump(const std::string& path, const Graph& g, const auto& states, Algorithm a) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  if constexpr (std::is_same_v<std::decay_t<decltype(states[0])>, double>) {
    write_ranks(os, g, states);
  } else if (a == Algorithm::ConnectedComponents) {
    write_labels(os, g, states);
  } else {
    write_distances(os, g, states);
  }
}

template <class State>
void absorb(BenchmarkRecord& rec, RunReport<State>& rep) {
  rec.seconds.push_back(rep.seconds);
  rec.supersteps = rep.superstep_count;
  rec.hit_superstep_cap = rep.hit_superstep_cap;
  rec.effective_combiner = rep.effective_combiner;
  rec.breakdown = std::move(rep.supersteps);
}

}  // namespace

void HarnessConfig::check() const {
  if (graph.empty()) throw ConfigError("no graph given");
  if (repeats == 0) throw ConfigError("repeats must be at least 1");
  if (pr_iters == 0) throw ConfigError("pr-iters must be at least 1");
  if (!(pr_damping > 0.0 && pr_damping < 1.0)) throw ConfigError("pr-damping must lie in (0, 1)");
  engine_config().validate();
}

EngineConfig HarnessConfig::engine_config() const {
  EngineConfig e;
  e.workers = workers;
  e.schedule = scheduler;
  e.chunk_size = chunk_size;
  e.layout = layout;
  e.combiner = combiner;
  e.max_supersteps = max_supersteps;
  return e;
}

double median(std::vector<double> xs) {
  if (xs.empty()) return 0.0;
  std::sort(xs.begin(), xs.end());
  const std::size_t m = xs.size() / 2;
  return xs.size() % 2 ? xs[m] : 0.5 * (xs[m - 1] + xs[m]);
}

Graph load_for(const HarnessConfig& cfg, double* load_seconds) {
  LoadOptions opts;
  opts.undirected = !cfg.directed;
  const auto t0 = Clock::now();
  Graph g = load_graph(cfg.graph, opts);
  if (load_seconds) *load_seconds = since(t0);
  return g;
}

BenchmarkRecord run_single(const HarnessConfig& cfg, const Graph& g, double load_seconds) {
  cfg.check();
  if (cfg.algorithm == Algorithm::Sssp && cfg.sssp_source >= g.vertex_count())
    throw ConfigError("sssp-source " + std::to_string(cfg.sssp_source) + " is not a vertex (graph has " +
                      std::to_string(g.vertex_count()) + ")");

  BenchmarkRecord rec;
  rec.config = cfg;
  rec.load_seconds = load_seconds;
  const EngineConfig ec = cfg.engine_config();

  // connectivity is undirected; symmetrise once, outside the timed region
  std::optional<Graph> sym;
  if (cfg.algorithm == Algorithm::ConnectedComponents && !g.undirected()) sym = g.symmetrized();
  const Graph& cc_graph = sym ? *sym : g;

  for (unsigned r = 0; r < cfg.repeats; ++r) {
    const bool last = r + 1 == cfg.repeats;
    switch (cfg.algorithm) {
      case Algorithm::PageRank: {
        auto rep = pagerank(g, ec, cfg.pr_iters, cfg.pr_damping);
        absorb(rec, rep);
        if (!last) break;
        if (!cfg.output.empty()) write_dump(cfg.output, g, rep.states, cfg.algorithm);
        if (cfg.validate) {
          check_ranks(rep.states, g.vertex_count() <= kDenseOracleLimit
                                      ? reference::pagerank_dense(g, cfg.pr_iters, cfg.pr_damping)
                                      : reference::pagerank_scatter(g, cfg.pr_iters, cfg.pr_damping));
          rec.validated = true;
        }
        break;
      }
      case Algorithm::ConnectedComponents: {
        auto rep = connected_components(cc_graph, ec);
        absorb(rec, rep);
        if (!last) break;
        if (!cfg.output.empty()) write_dump(cfg.output, g, rep.states, cfg.algorithm);
        if (cfg.validate) {
          check_exact<VertexId>(rep.states, reference::union_find_components(g), "component label");
          rec.validated = true;
        }
        break;
      }
      case Algorithm::Sssp: {
        auto rep = sssp_unweighted(g, cfg.sssp_source, ec);
        absorb(rec, rep);
        if (!last) break;
        if (!cfg.output.empty()) write_dump(cfg.output, g, rep.states, cfg.algorithm);
        if (cfg.validate) {
          check_exact<std::uint32_t>(rep.states, reference::bfs_distances(g, cfg.sssp_source), "distance");
          rec.validated = true;
        }
        break;
      }
    }
  }
  rec.median_seconds = median(rec.seconds);
  return rec;
}

BenchmarkRecord run_single(const HarnessConfig& cfg) {
  cfg.check();
  double load = 0.0;
  const Graph g = load_for(cfg, &load);
  return run_single(cfg, g, load);
}

std::vector<std::pair<std::string, HarnessConfig>> grid_variants(const HarnessConfig& base) {
  HarnessConfig b = base;
  b.grid = false;
  b.layout = LayoutMode::Interleaved;
  b.scheduler = Schedule::StaticVertex;
  b.combiner = Combiner::Lock;
  const bool push = base.algorithm == Algorithm::Sssp;

  std::vector<std::pair<std::string, HarnessConfig>> out;
  out.emplace_back("Baseline", b);
  if (push) {
    auto c = b;
    c.combiner = Combiner::Hybrid;
    out.emplace_back("Hybrid combiner", c);
  }
  {
    auto c = b;
    c.layout = LayoutMode::Externalised;
    out.emplace_back("Externalised structure", c);
  }
  {
    auto c = b;
    c.scheduler = Schedule::EdgeBalanced;
    out.emplace_back("Edge-centric workload", c);
  }
  {
    auto c = b;
    c.scheduler = Schedule::DynamicChunk;
    out.emplace_back("Dynamic scheduling", c);
  }
  {
    // dynamic rather than edge-centric; the two cannot be combined
    auto c = b;
    c.layout = LayoutMode::Externalised;
    c.scheduler = Schedule::DynamicChunk;
    if (push) c.combiner = Combiner::Hybrid;
    out.emplace_back("Final", c);
  }
  return out;
}

std::vector<BenchmarkRecord> run_grid(const HarnessConfig& base, const Graph& g, double load_seconds) {
  std::vector<BenchmarkRecord> out;
  for (auto& [label, cfg] : grid_variants(base)) {
    out.push_back(run_single(cfg, g, load_seconds));
    out.back().label = label;
  }
  const double base_median = out.front().median_seconds;
  for (auto& r : out) {
    r.baseline = out.front().label;
    r.speedup = r.median_seconds > 0.0 ? base_median / r.median_seconds : 0.0;
  }
  return out;
}

std::vector<BenchmarkRecord> run_grid(const HarnessConfig& base) {
  base.check();
  double load = 0.0;
  const Graph g = load_for(base, &load);
  return run_grid(base, g, load);
}

void write_table(std::ostream& os, const std::vector<BenchmarkRecord>& records) {
  if (records.empty()) return;
  char line[160];
  std::snprintf(line, sizeof line, "%-10s %-24s %8s %12s %9s %10s\n", "Benchmark", "Optimisation", "Workers",
                "Median (s)", "Speed-up", "Supersteps");
  os << line;
  std::string prev;
  for (const auto& r : records) {
    std::string bench(to_string(r.config.algorithm));
    if (bench == "pr") bench = "PR";
    else if (bench == "cc") bench = "CC";
    else bench = "SSSP";
    char speed[32] = "-";
    if (r.speedup) std::snprintf(speed, sizeof speed, "%.2f", *r.speedup);
    std::snprintf(line, sizeof line, "%-10s %-24s %8u %12.6f %9s %10llu\n", bench == prev ? "" : bench.c_str(),
                  r.label.c_str(), r.config.workers, r.median_seconds, speed,
                  static_cast<unsigned long long>(r.supersteps));
    os << line;
    prev = bench;
  }
}

std::string record_line(const BenchmarkRecord& r) {
  using nlohmann::json;
  const HarnessConfig& c = r.config;
  json j;
  j["label"] = r.label;
  j["graph"] = c.graph;
  j["algorithm"] = std::string(to_string(c.algorithm));
  j["workers"] = c.workers;
  j["scheduler"] = std::string(to_string(c.scheduler));
  j["combiner"] = std::string(to_string(c.combiner));
  j["layout"] = std::string(to_string(c.layout));
  j["chunk_size"] = c.chunk_size;
  j["pr_iters"] = c.pr_iters;
  j["pr_damping"] = c.pr_damping;
  j["sssp_source"] = c.sssp_source;
  j["repeats"] = c.repeats;
  j["output"] = c.output;
  j["report"] = c.report;
  j["records"] = c.records;
  j["validate"] = c.validate;
  j["grid"] = c.grid;
  j["directed"] = c.directed;
  j["max_supersteps"] = c.max_supersteps;
  j["effective_combiner"] = r.effective_combiner ? json(std::string(to_string(*r.effective_combiner))) : json();
  j["seconds"] = r.seconds;
  j["median_seconds"] = r.median_seconds;
  j["load_seconds"] = r.load_seconds;
  j["supersteps"] = r.supersteps;
  j["hit_superstep_cap"] = r.hit_superstep_cap;
  j["baseline"] = r.baseline ? json(*r.baseline) : json();
  j["speedup"] = r.speedup ? json(*r.speedup) : json();
  j["validated"] = r.validated ? json(*r.validated) : json();
  json steps = json::array();
  for (const auto& s : r.breakdown)
    steps.push_back({{"superstep", s.superstep}, {"seconds", s.seconds}, {"active", s.active}, {"messages", s.messages}});
  j["breakdown"] = std::move(steps);
  return j.dump();
}

void write_records(std::ostream& os, const std::vector<BenchmarkRecord>& records) {
  for (const auto& r : records) os << record_line(r) << '\n';
}

void emit_report(const std::vector<BenchmarkRecord>& records, const HarnessConfig& cfg) {
  if (!cfg.report.empty()) {
    std::ofstream os(cfg.report);
    if (!os) throw std::runtime_error("cannot write " + cfg.report);
    write_table(os, records);
  }
  if (!cfg.records.empty()) {
    std::ofstream os(cfg.records, std::ios::app);
    if (!os) throw std::runtime_error("cannot write " + cfg.records);
    write_records(os, records);
  }
}

}  // namespace vcp
