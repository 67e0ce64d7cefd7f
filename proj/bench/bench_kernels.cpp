// Serial references against the parallel engine on one synthetic graph.
#include <benchmark/benchmark.h>

#include "vcp/algorithms.hpp"
#include "vcp/generators.hpp"
#include "vcp/reference.hpp"

using namespace vcp;

namespace {

const Graph& graph() {
  static const Graph g = gen::power_law(200'000, 2.1, 99, 4);
  return g;
}

EngineConfig config(const benchmark::State& st) {
  EngineConfig c;
  c.workers = static_cast<unsigned>(st.range(0));
  c.layout = st.range(1) ? LayoutMode::Externalised : LayoutMode::Interleaved;
  c.schedule = static_cast<Schedule>(st.range(2));
  c.combiner = static_cast<Combiner>(st.range(3));
  return c;
}

void edges_per_second(benchmark::State& st, std::uint64_t per_iter) {
  st.counters["edges/s"] =
      benchmark::Counter(static_cast<double>(per_iter), benchmark::Counter::kIsIterationInvariantRate);
}

void BM_SerialPageRank(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(reference::pagerank_scatter(graph(), 10, 0.85));
  edges_per_second(st, 10 * graph().edge_count());
}

void BM_EnginePageRank(benchmark::State& st) {
  const auto cfg = config(st);
  for (auto _ : st) benchmark::DoNotOptimize(pagerank(graph(), cfg).states);
  edges_per_second(st, 10 * graph().edge_count());
}

void BM_SerialBfs(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(reference::bfs_distances(graph(), 0));
}

void BM_EngineSssp(benchmark::State& st) {
  const auto cfg = config(st);
  for (auto _ : st) benchmark::DoNotOptimize(sssp_unweighted(graph(), 0, cfg).states);
}

void BM_SerialUnionFind(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(reference::union_find_components(graph()));
}

void BM_EngineComponents(benchmark::State& st) {
  const auto cfg = config(st);
  for (auto _ : st) benchmark::DoNotOptimize(connected_components(graph(), cfg).states);
}

// args: workers, externalised, schedule, combiner
void grid(benchmark::internal::Benchmark* b, bool vary_combiner) {
  const long hw = static_cast<long>(default_worker_count());
  for (long w : {1L, hw}) {
    b->Args({w, 0, 0, 0});
    if (vary_combiner) b->Args({w, 0, 0, 2});
    b->Args({w, 1, 0, 0});
    b->Args({w, 0, 2, 0});
    b->Args({w, 0, 1, 0});
    b->Args({w, 1, 1, vary_combiner ? 2 : 0});
    if (hw == 1) break;
  }
  b->ArgNames({"workers", "external", "schedule", "combiner"})->Unit(benchmark::kMillisecond)->UseRealTime();
}

}  // namespace

BENCHMARK(BM_SerialPageRank)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnginePageRank)->Apply([](auto* b) { grid(b, false); });
BENCHMARK(BM_SerialBfs)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EngineSssp)->Apply([](auto* b) { grid(b, true); });
BENCHMARK(BM_SerialUnionFind)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EngineComponents)->Apply([](auto* b) { grid(b, false); });

BENCHMARK_MAIN();
