#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vcp/algorithms.hpp"
#include "vcp/engine.hpp"
#include "vcp/graph.hpp"

namespace vcp {

enum class ExitCode : int {
  Ok = 0,
  BadConfig = 2,
  LoadFailure = 3,
  ValidationFailure = 4,
  SuperstepCap = 5,
};

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct HarnessConfig {
  std::string graph;
  Algorithm algorithm = Algorithm::PageRank;
  unsigned workers = default_worker_count();
  Schedule scheduler = Schedule::StaticVertex;
  Combiner combiner = Combiner::Hybrid;
  LayoutMode layout = LayoutMode::Interleaved;
  std::size_t chunk_size = kDefaultChunkSize;
  std::uint32_t pr_iters = 10;
  double pr_damping = 0.85;
  VertexId sssp_source = 0;
  unsigned repeats = 3;
  std::string output;   // result dump, "vertex value" per line
  std::string report;   // human-readable table
  std::string records;  // one JSON object per line, appended
  bool validate = false;
  bool grid = false;
  bool directed = false;
  std::uint64_t max_supersteps = 10'000;

  /// Checks everything that does not need the graph. Throws ConfigError.
  void check() const;
  EngineConfig engine_config() const;
};

struct BenchmarkRecord {
  std::string label = "Single run";
  HarnessConfig config;
  std::vector<double> seconds;  // per repeat, algorithm only
  double median_seconds = 0.0;
  double load_seconds = 0.0;
  std::uint64_t supersteps = 0;
  bool hit_superstep_cap = false;
  std::optional<Combiner> effective_combiner;
  std::vector<SuperstepStats> breakdown;  // from the last repeat
  std::optional<std::string> baseline;    // label of the record speedup refers to
  std::optional<double> speedup;
  std::optional<bool> validated;
};

double median(std::vector<double> xs);

/// Loads cfg.graph, timing the load separately.
Graph load_for(const HarnessConfig& cfg, double* load_seconds = nullptr);

/// Runs cfg.repeats times on an already loaded graph. Writes the result dump
/// when cfg.output is set and throws ValidationError on an oracle mismatch.
BenchmarkRecord run_single(const HarnessConfig& cfg, const Graph& g, double load_seconds = 0.0);
BenchmarkRecord run_single(const HarnessConfig& cfg);

/// The optimisation variants of one benchmark, baseline first.
std::vector<std::pair<std::string, HarnessConfig>> grid_variants(const HarnessConfig& base);

/// Baseline, each single optimisation, then the combined "Final" row; every
/// record carries its speedup against the baseline median.
std::vector<BenchmarkRecord> run_grid(const HarnessConfig& base, const Graph& g, double load_seconds = 0.0);
std::vector<BenchmarkRecord> run_grid(const HarnessConfig& base);

void write_table(std::ostream& os, const std::vector<BenchmarkRecord>& records);
void write_records(std::ostream& os, const std::vector<BenchmarkRecord>& records);
std::string record_line(const BenchmarkRecord& r);

/// Writes the table to cfg.report and appends to cfg.records when set.
void emit_report(const std::vector<BenchmarkRecord>& records, const HarnessConfig& cfg);

}  // namespace vcp
