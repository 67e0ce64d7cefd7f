#include <random>

#include "doctest.h"
#include "vcp/generators.hpp"
#include "vcp/layout.hpp"

using namespace vcp;

namespace {

struct Fat {
  double rank;
  std::uint64_t pad[6];
};

template <class Store>
std::vector<std::pair<bool, std::int64_t>> replay(std::uint64_t seed) {
  Store s(64);
  std::mt19937_64 rng(seed);
  std::vector<std::pair<bool, std::int64_t>> seen;
  for (int i = 0; i < 2000; ++i) {
    const auto v = static_cast<VertexId>(rng() % 64);
    const Buffer b = rng() % 2 ? Buffer::Current : Buffer::Next;
    switch (rng() % 4) {
      case 0: s.hot_write(v, true, static_cast<std::int64_t>(rng() % 1000), b); break;
      case 1: s.hot_write(v, false, 0, b); break;
      case 2: s.swap_buffers(); break;
      default: {
        auto h = s.hot_read(v, b);
        seen.emplace_back(h.flag, h.flag ? h.value : 0);
      }
    }
  }
  return seen;
}

}  // namespace

TEST_SUITE("layout") {

TEST_CASE("both layouts observe the same hot values") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed)
    CHECK(replay<InterleavedStore<int, std::int64_t>>(seed) == replay<ExternalisedStore<int, std::int64_t>>(seed));
}

TEST_CASE("hot write then read round trips in each buffer") {
  ExternalisedStore<Fat, std::uint32_t> s(3);
  s.hot_write(1, true, 42, Buffer::Next);
  CHECK_FALSE(s.hot_read(1).flag);
  s.swap_buffers();
  auto h = s.hot_read(1);
  CHECK(h.flag);
  CHECK(h.value == 42);
  CHECK_THROWS_AS(s.hot_read(3), std::out_of_range);
  CHECK_THROWS_AS(s.cold(5), std::out_of_range);
}

TEST_CASE("cold attributes carry adjacency") {
  const Graph g = gen::star(3);
  InterleavedStore<double, double> a(g);
  ExternalisedStore<double, double> b(g);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    CHECK(a.cold(v).out_degree == g.out_degree(v));
    CHECK(b.cold(v).in_degree == g.in_degree(v));
    CHECK(a.cold(v).out_begin == g.out_offsets()[v]);
    CHECK(b.cold(v).in_begin == g.in_offsets()[v]);
  }
  a.cold(2).state = 1.5;
  CHECK(a.cold(2).state == 1.5);
}

TEST_CASE("externalised hot records are dense and small") {
  ExternalisedStore<Fat, std::uint32_t> s(1000);
  CHECK(s.record_bytes() == sizeof(MessageCell<std::uint32_t>));
  CHECK(s.record_bytes() <= 8);
  CHECK(s.hot_bytes() == 2 * 1000 * s.record_bytes());
  CHECK(s.hot_data(0) + 1 == &s.cell(1, Buffer::Current));
  // the hot array skips the cold state entirely
  InterleavedStore<Fat, std::uint32_t> i(1000);
  CHECK(i.record_bytes() > 4 * s.record_bytes());
  CHECK(i.hot_bytes() == 0);
}

TEST_CASE("hot and cold storage do not alias") {
  auto check = [](auto store) {
    store.cold(1).state = 7;
    store.cold(1).halted = true;
    store.hot_write(1, true, 99);
    CHECK(store.cold(1).state == 7);
    CHECK(store.cold(1).halted);
    CHECK_FALSE(store.hot_read(0).flag);
    CHECK_FALSE(store.hot_read(2).flag);
    store.cold(2).state = 5;
    CHECK(store.hot_read(1).value == 99);
    CHECK_FALSE(store.hot_read(2).flag);
  };
  check(InterleavedStore<std::int64_t, std::int64_t>(3));
  check(ExternalisedStore<std::int64_t, std::int64_t>(3));
}

TEST_CASE_TEMPLATE("state values of several widths round trip", T, std::int32_t, std::int64_t, double) {
  InterleavedStore<T, float> a(4);
  ExternalisedStore<T, float> b(4);
  a.cold(3).state = static_cast<T>(-12345.5);
  b.cold(3).state = static_cast<T>(-12345.5);
  CHECK(a.cold(3).state == static_cast<T>(-12345.5));
  CHECK(b.cold(3).state == a.cold(3).state);
}

TEST_CASE("layout names") {
  CHECK(parse_layout("interleaved") == LayoutMode::Interleaved);
  CHECK(parse_layout("external") == LayoutMode::Externalised);
  CHECK(to_string(LayoutMode::Externalised) == "external");
  CHECK_THROWS_AS(parse_layout("soa"), ConfigError);
}

}  // TEST_SUITE
