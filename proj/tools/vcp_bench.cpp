// Benchmark driver: one configuration, or the whole optimisation grid.
#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "vcp/harness.hpp"

namespace {

int code(vcp::ExitCode c) { return static_cast<int>(c); }

}  // namespace

int main(int argc, char** argv) {
  using namespace vcp;
  HarnessConfig cfg;
  CLI::App app{"Run vertex-centric benchmarks (pr, cc, sssp) on an edge-list graph"};

  app.add_option("--graph", cfg.graph, "SNAP-style edge list")->required();
  std::string algorithm = "pr", scheduler = "static", combiner = "hybrid", layout = "interleaved";
  app.add_option("--algorithm", algorithm, "pr | cc | sssp")->capture_default_str();
  app.add_option("--workers", cfg.workers, "worker threads")->capture_default_str();
  app.add_option("--scheduler", scheduler, "static | dynamic | edge")->capture_default_str();
  app.add_option("--combiner", combiner, "lock | cas | hybrid (push-mode algorithms)")->capture_default_str();
  app.add_option("--layout", layout, "interleaved | external")->capture_default_str();
  app.add_option("--chunk-size", cfg.chunk_size, "vertices per dynamic chunk")->capture_default_str();
  app.add_option("--pr-iters", cfg.pr_iters, "PageRank iterations")->capture_default_str();
  app.add_option("--pr-damping", cfg.pr_damping, "PageRank damping factor")->capture_default_str();
  app.add_option("--sssp-source", cfg.sssp_source, "SSSP source (dense id)")->capture_default_str();
  app.add_option("--repeats", cfg.repeats, "timed runs per configuration")->capture_default_str();
  app.add_option("--output", cfg.output, "write 'vertex value' lines from the last run");
  app.add_option("--report", cfg.report, "write the human-readable table here");
  app.add_option("--records", cfg.records, "append JSON lines here");
  app.add_flag("--validate", cfg.validate, "check results against a sequential oracle");
  app.add_flag("--grid", cfg.grid, "run baseline, each optimisation, and all together");
  app.add_flag("--directed", cfg.directed, "keep edge direction instead of symmetrising");
  app.add_option("--max-supersteps", cfg.max_supersteps, "safety cap")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : code(ExitCode::BadConfig);
  }

  std::vector<BenchmarkRecord> records;
  try {
    cfg.algorithm = parse_algorithm(algorithm);
    cfg.scheduler = parse_schedule(scheduler);
    cfg.combiner = parse_combiner(combiner);
    cfg.layout = parse_layout(layout);
    cfg.check();
    double load = 0.0;
    const Graph g = load_for(cfg, &load);
    std::fprintf(stderr, "loaded %s: %u vertices, %llu edges in %.3f s\n", cfg.graph.c_str(), g.vertex_count(),
                 static_cast<unsigned long long>(g.edge_count()), load);
    if (cfg.grid) records = run_grid(cfg, g, load);
    else records.push_back(run_single(cfg, g, load));
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return code(ExitCode::BadConfig);
  } catch (const ValidationError& e) {
    std::cerr << "validation failed: " << e.what() << '\n';
    return code(ExitCode::ValidationFailure);
  } catch (const GraphLoadError& e) {
    std::cerr << "cannot load graph: " << e.what() << '\n';
    return code(ExitCode::LoadFailure);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return code(ExitCode::LoadFailure);
  }

  write_table(std::cout, records);
  try {
    emit_report(records, cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  for (const auto& r : records) {
    if (r.hit_superstep_cap) {
      std::cerr << "superstep cap of " << cfg.max_supersteps << " reached (" << r.label << ")\n";
      return code(ExitCode::SuperstepCap);
    }
  }
  if (cfg.validate) std::cerr << "validation passed\n";
  return 0;
}
