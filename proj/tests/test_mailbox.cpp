#include <omp.h>

#include <map>
#include <set>
#include <thread>

#include "combiner_checks.hpp"
#include "doctest.h"
#include "vcp/mailbox.hpp"

using namespace vcp;
using testing::Fold;

namespace {

// Exhaustive interleaving check of the hybrid send protocol. Each sender is a
// small state machine whose every step is one atomic action on the shared
// {flag, msg, lock} triple; an observer reads flag, then msg.
struct Model {
  bool flag_first = false;  // the broken ordering: publish the flag before the message
  std::vector<int> inputs;  // one message per sender
  int sentinel = -100;      // initial msg, below every input so min exposes it
};

struct State {
  int flag = 0, msg = 0, lock = -1;
  std::vector<int> pc, old;
  int obs_pc = 0, obs_flag = 0;
  auto key() const { return std::tuple(flag, msg, lock, pc, old, obs_pc, obs_flag); }
};

constexpr int kDone = 99;

struct Verdict {
  std::size_t states = 0;
  std::size_t wrong_folds = 0;
  std::size_t torn_reads = 0;  // observer saw flag then sentinel
};

// returns false when thread i cannot move
bool step(const Model& m, State& s, int i) {
  const int x = m.inputs[i];
  int& pc = s.pc[i];
  auto cas_phase = [&] {
    const int nw = std::min(s.old[i], x);
    if (nw == s.old[i]) pc = kDone;
    else if (s.msg == s.old[i]) {
      s.msg = nw;
      pc = kDone;
    } else {
      s.old[i] = s.msg;  // failed CAS reloads
    }
  };
  switch (pc) {
    case 0: pc = s.flag ? 10 : 1; return true;
    case 1:
      if (s.lock != -1) return false;
      s.lock = i;
      pc = 2;
      return true;
    case 2: pc = s.flag ? 3 : 4; return true;
    case 3: s.lock = -1; pc = 10; return true;
    case 4:
      if (m.flag_first) s.flag = 1;
      else s.msg = x;
      pc = 5;
      return true;
    case 5:
      if (m.flag_first) s.msg = x;
      else s.flag = 1;
      pc = 6;
      return true;
    case 6: s.lock = -1; pc = kDone; return true;
    case 10: s.old[i] = s.msg; pc = 11; return true;
    case 11: cas_phase(); return true;
    default: return false;
  }
}

void explore(const Model& m, const State& s, std::set<decltype(State{}.key())>& seen, Verdict& v) {
  if (!seen.insert(s.key()).second) return;
  ++v.states;
  bool moved = false;
  for (int i = 0; i < static_cast<int>(m.inputs.size()); ++i) {
    State n = s;
    if (step(m, n, i)) {
      moved = true;
      explore(m, n, seen, v);
    }
  }
  if (s.obs_pc < 2) {
    State n = s;
    if (n.obs_pc == 0) n.obs_flag = n.flag;
    else if (n.obs_flag && n.msg == m.sentinel) ++v.torn_reads;
    ++n.obs_pc;
    moved = true;
    explore(m, n, seen, v);
  }
  if (!moved) {
    const int want = *std::min_element(m.inputs.begin(), m.inputs.end());
    if (!s.flag || s.msg != want) ++v.wrong_folds;
  }
}

Verdict check_model(const Model& m) {
  State s;
  s.msg = m.sentinel;
  s.pc.assign(m.inputs.size(), 0);
  s.old.assign(m.inputs.size(), 0);
  std::set<decltype(State{}.key())> seen;
  Verdict v;
  explore(m, s, seen, v);
  return v;
}

}  // namespace

TEST_SUITE("mailbox") {

TEST_CASE("first message sets the flag, later ones combine") {
  MessageCell<int> c;
  SpinLock l;
  auto mn = [](int a, int b) { return std::min(a, b); };
  CHECK(send_lock(c, l, 7, mn));
  CHECK_FALSE(send_lock(c, l, 3, mn));
  CHECK_FALSE(send_hybrid(c, l, 9, mn));
  CHECK(c.has_msg.load());
  CHECK(c.load() == 3);
  auto got = read_and_consume(c);
  REQUIRE(got);
  CHECK(*got == 3);
  CHECK_FALSE(c.has_msg.load());
  CHECK_FALSE(read_and_consume(c).has_value());
  CHECK(send_hybrid(c, l, 4, mn));
}

TEST_CASE("sum to zero keeps the message for flagged combiners") {
  auto sum = [](int a, int b) { return a + b; };
  MessageCell<int> a, b, c;
  SpinLock la, lb;
  send_lock(a, la, 5, sum);
  send_lock(a, la, -5, sum);
  send_hybrid(b, lb, 5, sum);
  send_hybrid(b, lb, -5, sum);
  CHECK(a.has_msg.load());
  CHECK(a.load() == 0);
  CHECK(b.has_msg.load());
  CHECK(b.load() == 0);
  // the flagless preset variant cannot tell this apart from no message
  send_cas_preset(c, 5, sum);
  send_cas_preset(c, -5, sum);
  CHECK_FALSE(read_and_consume_preset(c, 0).has_value());
}

TEST_CASE("cas skips the write when the value would not change") {
  MessageCell<int> c;
  c.store(2);
  auto mn = [](int a, int b) { return std::min(a, b); };
  CHECK_FALSE(apply_cas(c, 5, mn));
  CHECK(apply_cas(c, 1, mn));
  CHECK(c.load() == 1);
}

TEST_CASE("oversized messages fall back to the lock") {
  struct Big {
    std::int64_t a, b;
    bool operator==(const Big&) const = default;
  };
  CHECK_FALSE(kCasCapable<Big>);
  CHECK(kCasCapable<std::uint32_t>);
  CHECK(kCasCapable<double>);
  MailboxArray<Big> box(2);
  auto add = [](Big x, Big y) { return Big{x.a + y.a, x.b + y.b}; };
  CHECK(box.send(Combiner::Hybrid, 1, Big{1, 2}, add));
  CHECK_FALSE(box.send(Combiner::Cas, 1, Big{3, 4}, add));
  box.swap_buffers();
  auto m = box.read_and_consume(1);
  REQUIRE(m);
  CHECK(*m == Big{4, 6});
}

TEST_CASE("mailbox array double buffering") {
  MailboxArray<std::uint32_t> box(4);
  auto mn = [](std::uint32_t a, std::uint32_t b) { return std::min(a, b); };
  box.send(Combiner::Lock, 2, 10, mn);
  CHECK_FALSE(box.read_and_consume(2).has_value());
  box.swap_buffers();
  CHECK(box.read_and_consume(2) == std::optional<std::uint32_t>(10));
  CHECK(box.current_index() == 1);
}

TEST_CASE("spin lock gives mutual exclusion") {
  SpinLock l;
  std::int64_t counter = 0;
#pragma omp parallel num_threads(4)
  for (int i = 0; i < 20000; ++i) {
    l.lock();
    ++counter;
    l.unlock();
  }
  CHECK(counter == 4 * 20000);
  CHECK(l.try_lock());
  CHECK_FALSE(l.try_lock());
  l.unlock();
}

TEST_CASE("hybrid protocol is correct under every interleaving") {
  for (auto inputs : std::vector<std::vector<int>>{{3, 1}, {2, 5, 1}, {4, 4, 2}}) {
    Model m;
    m.inputs = inputs;
    const Verdict v = check_model(m);
    CAPTURE(inputs.size());
    CHECK(v.states > 10);
    CHECK(v.wrong_folds == 0);
    CHECK(v.torn_reads == 0);
  }
}

TEST_CASE("publishing the flag first is caught by the model") {
  Model m;
  m.inputs = {3, 1};
  m.flag_first = true;
  const Verdict v = check_model(m);
  CHECK(v.torn_reads > 0);
  CHECK(v.wrong_folds > 0);
}

TEST_CASE("concurrent folds match the sequential fold") {
  for (Combiner s : {Combiner::Lock, Combiner::Cas, Combiner::Hybrid})
    for (Fold f : {Fold::Min, Fold::Sum})
      for (unsigned t : {1u, 2u, 4u, 8u}) {
        const auto r = testing::check_fold(s, f, t, 400, 11 * t + static_cast<unsigned>(f));
        CAPTURE(to_string(s));
        CAPTURE(t);
        CHECK(r.mismatches == 0);
        if (f == Fold::Sum) CHECK(r.cancel_case_ok == (s != Combiner::Cas));
      }
}

TEST_CASE("readers never see a flagged sentinel") {
  const auto r = testing::publication_stress(8, 100'000, 5);
  CHECK(r.sends >= 100'000);
  CHECK(r.violations == 0);
}

TEST_CASE("combiner names") {
  for (auto c : {Combiner::Lock, Combiner::Cas, Combiner::Hybrid}) CHECK(parse_combiner(to_string(c)) == c);
  CHECK_THROWS_AS(parse_combiner("atomic"), ConfigError);
}

}  // TEST_SUITE
