#include <omp.h>

#include <atomic>
#include <random>

#include "doctest.h"
#include "vcp/generators.hpp"
#include "vcp/scheduler.hpp"

using namespace vcp;

namespace {

std::vector<EdgeId> prefix_of(const std::vector<VertexId>& w) {
  std::vector<EdgeId> p(w.size());
  EdgeId s = 0;
  for (std::size_t i = 0; i < w.size(); ++i) p[i] = s += w[i];
  return p;
}

void check_covers(const WorkPartition& p, std::size_t n, std::size_t chunks) {
  REQUIRE(p.chunk_count() == chunks);
  CHECK(p.bounds.front() == 0);
  CHECK(p.bounds.back() == n);
  CHECK(std::is_sorted(p.bounds.begin(), p.bounds.end()));
}

}  // namespace

TEST_SUITE("scheduler") {

TEST_CASE("static partition sizes differ by at most one") {
  const WorkPartition p = static_partition(10, 4);
  check_covers(p, 10, 4);
  CHECK(p.bounds == std::vector<std::size_t>{0, 3, 6, 8, 10});
  const WorkPartition q = static_partition(2, 4);
  CHECK(q.bounds == std::vector<std::size_t>{0, 1, 2, 2, 2});
  const WorkPartition t = static_partition(10, 3);
  CHECK(t.bounds == std::vector<std::size_t>{0, 4, 7, 10});
  CHECK(static_partition(7, 1).bounds == std::vector<std::size_t>{0, 7});
  CHECK(static_partition(0, 3).bounds == std::vector<std::size_t>{0, 0, 0, 0});
  CHECK_THROWS_AS(static_partition(5, 0), ConfigError);
}

TEST_CASE("edge-balanced split of uniform weights is even") {
  const std::vector<VertexId> w(12, 3);
  const WorkPartition p = partition_by_prefix(prefix_of(w), 4);
  check_covers(p, 12, 4);
  CHECK(p.loads == std::vector<EdgeId>{9, 9, 9, 9});
}

TEST_CASE("heavy first vertex with three light ones") {
  const std::vector<VertexId> w{5, 1, 1, 1};
  const WorkPartition p = partition_by_prefix(prefix_of(w), 2);
  CHECK(p.bounds == std::vector<std::size_t>{0, 1, 4});
  CHECK(p.loads == std::vector<EdgeId>{5, 3});
}

TEST_CASE("a single active vertex fills one chunk") {
  const std::vector<VertexId> w{9};
  const WorkPartition p = partition_by_prefix(prefix_of(w), 4);
  std::size_t non_empty = 0;
  for (std::size_t k = 0; k < p.chunk_count(); ++k) non_empty += !p.chunk(k).empty();
  CHECK(non_empty == 1);
}

TEST_CASE("one heavy vertex gets a chunk of its own") {
  // star hub first: 6 + 1*6
  const std::vector<VertexId> w{6, 1, 1, 1, 1, 1, 1};
  const WorkPartition p = partition_by_prefix(prefix_of(w), 2);
  CHECK(p.bounds == std::vector<std::size_t>{0, 1, 7});
  CHECK(p.loads == std::vector<EdgeId>{6, 6});
}

TEST_CASE("edge-balanced degenerate inputs") {
  CHECK(partition_by_prefix({}, 3).bounds == std::vector<std::size_t>{0, 0, 0, 0});
  const std::vector<EdgeId> zeros{0, 0, 0};
  const WorkPartition p = partition_by_prefix(zeros, 2);
  check_covers(p, 3, 2);
  const std::vector<VertexId> w{5};
  check_covers(partition_by_prefix(prefix_of(w), 8), 1, 8);
}

TEST_CASE("edge-balanced chunk loads stay within one max degree of the mean") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 400;
    const std::size_t W = 1 + rng() % 40;
    std::vector<VertexId> w(n);
    for (auto& x : w) x = static_cast<VertexId>(rng() % 3 == 0 ? rng() % 200 : rng() % 5);
    const auto pre = prefix_of(w);
    const WorkPartition p = partition_by_prefix(pre, W);
    check_covers(p, n, W);
    const EdgeId total = pre.back();
    const EdgeId maxw = *std::max_element(w.begin(), w.end());
    const EdgeId ceil_mean = (total + W - 1) / W;
    EdgeId hi = 0, lo = total, sum = 0;
    for (EdgeId l : p.loads) {
      CHECK(l <= ceil_mean + maxw);
      hi = std::max(hi, l);
      lo = std::min(lo, l);
      sum += l;
    }
    CHECK(sum == total);
    // nearest-boundary rounding can miss by one weight on each side
    CHECK(hi - lo <= 2 * maxw);
  }
}

TEST_CASE("edge-balanced over an active subset uses those vertices' degrees") {
  const Graph g = gen::star(6);
  const DegreeStats d = degree_prefix_sums(g);
  const std::vector<VertexId> active{1, 2, 0, 3};
  const WorkPartition p = edge_balanced_partition(active, d, 2);
  check_covers(p, 4, 2);
  EdgeId sum = 0;
  for (EdgeId l : p.loads) sum += l;
  CHECK(sum == 9);
}

TEST_CASE("dynamic chunks cover the range in order") {
  const auto c = dynamic_chunks(10, 4);
  CHECK(c == std::vector<Range>{{0, 4}, {4, 8}, {8, 10}});
  std::vector<std::size_t> sizes;
  for (auto r : dynamic_chunks(1000, 256)) sizes.push_back(r.size());
  CHECK(sizes == std::vector<std::size_t>{256, 256, 256, 232});
  CHECK(dynamic_chunks(100) == std::vector<Range>{{0, 100}});
  CHECK(dynamic_chunks(0, 4).empty());
  CHECK(dynamic_chunks(3, 256) == std::vector<Range>{{0, 3}});
  CHECK_THROWS_AS(dynamic_chunks(3, 0), ConfigError);
}

TEST_CASE("concurrent claims hand out every index once") {
  constexpr std::size_t n = 100'003;
  std::vector<std::atomic<int>> seen(n);
  ChunkQueue q(n, 64);
#pragma omp parallel num_threads(8)
  {
    while (auto r = q.claim())
      for (std::size_t i = r->begin; i < r->end; ++i) seen[i].fetch_add(1, std::memory_order_relaxed);
  }
  std::size_t bad = 0;
  for (auto& s : seen) bad += s.load() != 1;
  CHECK(bad == 0);
  CHECK_FALSE(q.claim().has_value());
  q.reset(5, 2);
  CHECK(q.claim() == Range{0, 2});
}

TEST_CASE("edge-centric and dynamic toggles are exclusive") {
  CHECK(schedule_from_toggles(false, false) == Schedule::StaticVertex);
  CHECK(schedule_from_toggles(true, false) == Schedule::EdgeBalanced);
  CHECK(schedule_from_toggles(false, true) == Schedule::DynamicChunk);
  CHECK_THROWS_AS(schedule_from_toggles(true, true), ConfigError);
}

TEST_CASE("schedule names") {
  for (auto s : {Schedule::StaticVertex, Schedule::DynamicChunk, Schedule::EdgeBalanced})
    CHECK(parse_schedule(to_string(s)) == s);
  CHECK_THROWS_AS(parse_schedule("guided"), ConfigError);
}

}  // TEST_SUITE
