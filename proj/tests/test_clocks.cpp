#include "oracles.hpp"

#include "causal/error.hpp"
#include "causal/generators.hpp"
#include "causal/inline_clock.hpp"
#include "causal/simulator.hpp"
#include "causal/star_clock.hpp"
#include "causal/timestampers.hpp"
#include "causal/vector_clock.hpp"

#include <doctest.h>

using namespace causal;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::InvalidArgument;
}

Rational q(long n, long d = 1) { return make_rational(n, d); }

InlineTimestamp outside(ProcessId id, std::uint32_t index, VectorTimestamp vect, std::vector<NextSlot> next) {
  return {std::move(vect), OutsideCoverFields{id, index, std::move(next), {}}};
}

InlineTimestamp inside(VectorTimestamp vect) { return {std::move(vect), std::nullopt}; }

const NextSlot inf = NextSlot::infinity();

}  // namespace

TEST_CASE("vc_less and vc_leq") {
  CHECK(vc_less({0, 1}, {3, 1}));
  CHECK_FALSE(vc_less({0, 1}, {0, 1}));
  CHECK_FALSE(vc_less({1, 0}, {0, 1}));
  CHECK_FALSE(vc_less({0, 1}, {1, 0}));
  CHECK(vc_leq({0, 1}, {0, 1}));
  CHECK(vc_less({q(1, 2)}, {q(2, 3)}));
  CHECK(code_of([] { (void)vc_less({0, 1}, {0, 1, 2}); }) == Errc::LengthMismatch);
  CHECK(code_of([] { (void)vc_leq({0}, {0, 1}); }) == Errc::LengthMismatch);
}

TEST_CASE("vc_step") {
  CHECK(vc_step({0, 0}, 0) == VectorTimestamp{1, 0});
  CHECK(vc_step({2, 0}, 0, VectorTimestamp{1, 3}) == VectorTimestamp{3, 3});
  CHECK(vc_step({3, 1}, 0, VectorTimestamp{0, 1}) == VectorTimestamp{4, 1});
  CHECK(code_of([] { (void)vc_step({0, 0}, 0, VectorTimestamp{1}); }) == Errc::LengthMismatch);
}

TEST_CASE("vc_less is a strict partial order on random vectors") {
  std::mt19937 rng(3);
  auto draw = [&] {
    VectorTimestamp v(3);
    for (std::size_t i = 0; i < 3; ++i) v[i] = q(static_cast<long>(rng() % 3), 1 + static_cast<long>(rng() % 2));
    return v;
  };
  std::vector<VectorTimestamp> vs;
  for (int i = 0; i < 40; ++i) vs.push_back(draw());
  for (const auto& a : vs) {
    CHECK_FALSE(vc_less(a, a));
    for (const auto& b : vs) {
      if (vc_less(a, b)) CHECK_FALSE(vc_less(b, a));
      for (const auto& c : vs) {
        if (vc_less(a, b) && vc_less(b, c)) CHECK(vc_less(a, c));
      }
    }
  }
}

TEST_CASE("vector clock orders match increment placement") {
  VectorClock merge_first(2, 0, VectorClock::Order::merge_then_increment);
  VectorClock increment_first(2, 0, VectorClock::Order::increment_then_merge);
  for (const auto& in : {std::optional<VectorTimestamp>{}, std::optional<VectorTimestamp>{VectorTimestamp{0, 4}},
                         std::optional<VectorTimestamp>{VectorTimestamp{1, 2}}}) {
    CHECK(merge_first.tick(in) == increment_first.tick(in));
  }
  VectorClock observer(2, std::nullopt);
  CHECK(observer.tick(VectorTimestamp{2, 1}) == VectorTimestamp{2, 1});
  CHECK(observer.tick() == VectorTimestamp{2, 1});
}

TEST_CASE("vector clocks match the closure on random executions") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    RandomScenarioOptions opt;
    opt.processes = 2 + seed % 7;
    opt.max_events = 40;
    opt.seed = seed;
    const auto result = run(random_scenario(opt), Algorithm::vclock);
    const oracle::Closure fw(result.trace);
    std::vector<ProcessId> all(opt.processes);
    std::iota(all.begin(), all.end(), 0);
    const auto assigned = assign_vector_clocks(result.trace, all);
    for (const auto& rec : result.timestamps) {
      const auto expected = fw.vector_of(rec.event, all);
      CHECK(std::get<VectorTimestamp>(rec.timestamp) == expected);
      CHECK(assigned.at(rec.event) == expected);
    }
    const std::vector<ProcessId> subset{0};
    for (const auto& [id, ts] : assign_vector_clocks(result.trace, subset)) {
      CHECK(ts == fw.vector_of(id, subset));
    }
  }
}

TEST_CASE("star_update") {
  CHECK(star_update(Radial{0}, {0, 0, 0}) == VectorTimestamp{1, 0, 0});
  CHECK(star_update(Radial{0}, {q(3, 2), 0, 0}) == VectorTimestamp{2, 0, 0});
  CHECK(star_update(Radial{2}, {0, 0, 4}) == VectorTimestamp{0, 0, 5});
  CHECK(star_update(Central{}, {1, 0, 2}) == VectorTimestamp{q(3, 2), q(1, 2), q(5, 2)});
  CHECK(star_update(Central{}, {q(3, 2), 0}) == VectorTimestamp{q(7, 4), q(1, 2)});
  CHECK(code_of([] { (void)star_update(Central{}, {0}); }) == Errc::BadLength);
  CHECK(code_of([] { (void)star_update(Radial{3}, {0, 0, 0}); }) == Errc::BadLength);
}

TEST_CASE("star clock events") {
  const auto g = CommunicationGraph::star(4);
  StarClock p1(g, 1), p0(g, 0), p2(g, 2);
  const auto s = p1.on_send(0);
  CHECK(s.timestamp == VectorTimestamp{1, 0, 0});
  CHECK(s.piggyback == s.timestamp);
  CHECK(p0.on_receive(1, *s.piggyback).timestamp == VectorTimestamp{q(3, 2), q(1, 2), q(1, 2)});
  CHECK(p2.on_compute().timestamp == VectorTimestamp{0, 1, 0});
  const auto c = p0.on_send(2);
  CHECK(c.timestamp == VectorTimestamp{q(7, 4), q(3, 4), q(3, 4)});
  StarClock p2b(g, 2);
  p2b.on_compute();
  CHECK(p2b.on_receive(0, {q(3, 2), q(1, 2), q(1, 2)}).timestamp == VectorTimestamp{q(3, 2), 2, q(1, 2)});
  CHECK(code_of([&] { p1.on_send(2); }) == Errc::NotStarTopology);
  CHECK(code_of([&] { p1.on_receive(0, {0, 0}); }) == Errc::BadLength);
  CHECK(code_of([] { StarClock(CommunicationGraph::path(4), 0); }) == Errc::NotStarTopology);
  CHECK(code_of([] { StarClock(CommunicationGraph::star(2), 0); }) == Errc::NotStarTopology);
  CHECK(star_slot(0, 3) == 2);
}

TEST_CASE("star timestamps: integer radial slots, fractional central slots, increasing per process") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    RandomScenarioOptions opt;
    opt.processes = 3 + seed % 4;
    opt.star = true;
    opt.seed = seed;
    const auto result = run(random_scenario(opt), Algorithm::star);
    std::map<ProcessId, VectorTimestamp> last;
    for (const auto& rec : result.timestamps) {
      const auto& ts = std::get<VectorTimestamp>(rec.timestamp);
      REQUIRE(ts.size() == opt.processes - 1);
      if (rec.event.proc == 0) {
        for (std::size_t i = 0; i < ts.size(); ++i) CHECK_FALSE(is_integer(ts[i]));
      } else {
        CHECK(is_integer(ts[star_slot(0, rec.event.proc)]));
      }
      if (auto it = last.find(rec.event.proc); it != last.end()) CHECK(vc_less(it->second, ts));
      last[rec.event.proc] = ts;
    }
  }
}

TEST_CASE("timestamper factory") {
  CHECK(make_timestamper("vclock")->length(5) == 5);
  CHECK(make_timestamper("star")->length(5) == 4);
  CHECK(make_timestamper("truncated-vclock:2")->length(5) == 2);
  CHECK(make_timestamper("lamport-scalar")->length(5) == 1);
  CHECK(make_timestamper("zero")->name() == "zero");
  CHECK(code_of([] { make_timestamper("bogus"); }) == Errc::InvalidArgument);
  CHECK(code_of([] { make_timestamper("truncated-vclock:x"); }) == Errc::InvalidArgument);
}

TEST_CASE("inline comparator cases") {
  const auto h_u = outside(3, 1, {0, 1}, {NextSlot::at(3), NextSlot::at(5)});
  const auto h_t = outside(3, 1, {0, 1}, {NextSlot::at(3), inf});
  const auto g_u = outside(3, 2, {0, 1}, {NextSlot::at(3), NextSlot::at(5)});
  const auto e = inside({3, 1});
  CHECK(inline_less(h_u, e));         // case (iv)
  CHECK_FALSE(inline_less(e, h_t));   // case (iii): (3,1) <= (0,1) fails
  CHECK_FALSE(inline_less(h_u, h_u));
  CHECK(inline_less(h_u, g_u));       // case (i)
  CHECK_FALSE(inline_less(g_u, h_u));
  CHECK(inline_less(inside({0, 1}), inside({3, 1})));  // case (ii)
  CHECK(inline_less(inside({0, 1}), h_u));              // case (iii), equal vect
  CHECK_FALSE(inline_less(outside(3, 1, {0, 1}, {inf, inf}), e));
  const auto pending = outside(3, 1, {0, 1}, {NextSlot::pending(), inf});
  CHECK(pending.has_pending());
  CHECK(pending.pending_positions() == std::vector<std::size_t>{0});
  CHECK(code_of([&] { (void)inline_less(pending, e); }) == Errc::PendingTimestamp);
}

TEST_CASE("element counts") {
  CHECK(element_count(outside(3, 1, {0, 1}, {inf, inf})) == 6);
  CHECK(element_count(inside({3, 1})) == 2);
  CHECK(element_count(outside(1, 1, {0}, {inf})) == 4);
}

TEST_CASE("inline process resolves next entries from controls") {
  // Cover {0} on the path 0-1; p1 sends twice and the second message arrives first.
  const auto g = CommunicationGraph::path(2);
  const CoverSet cover(2, {0});
  InlineProcess p0(0, cover, g), p1(1, cover, g);
  p1.on_compute(q(1));
  const auto m1 = p1.on_send(0, q(2));
  const auto m2 = p1.on_send(0, q(3));
  CHECK(p1.timestamp(1).next_at(0).is_pending());
  CHECK(std::holds_alternative<Blocked>(p1.query(1, q(3))));
  CHECK(p1.pending_batches(0) == 2);
  CHECK(m1.piggyback->sender_index == 2u);

  const auto r2 = p0.on_receive(1, *m2.piggyback, q(4));
  const auto r1 = p0.on_receive(1, *m1.piggyback, q(6));
  REQUIRE(r2.control);
  REQUIRE(r1.control);
  CHECK(*r2.control == ControlMessage{0, 1, 3, 1});
  CHECK(*r1.control == ControlMessage{0, 1, 2, 2});
  CHECK(p0.timestamp(1) == inside({1}));

  p1.on_control(*r2.control);
  for (std::uint32_t i = 1; i <= 3; ++i) CHECK(p1.timestamp(i).next_at(0) == NextSlot::at(1));
  CHECK(p1.pending_batches(0) == 0);
  p1.on_control(*r1.control);  // stale: already resolved by the earlier receive
  CHECK(p1.timestamp(2).next_at(0) == NextSlot::at(1));
  CHECK(code_of([&] { p1.on_control(*r2.control); }) == Errc::OutOfOrderControl);
  CHECK(code_of([&] { p1.on_control({0, 1, 9, 5}); }) == Errc::UnknownSendIndex);

  const auto ready = std::get<Ready>(p1.query(1, q(7)));
  CHECK(inline_less(ready.timestamp, p0.timestamp(1)));
  CHECK(code_of([&] { (void)p1.query(1, q(0)); }) == Errc::QueryBeforeEvent);
  CHECK(code_of([&] { (void)p1.query(9, q(9)); }) == Errc::UnknownEvent);
}

TEST_CASE("inline process rejects a bad cover") {
  const auto g = CommunicationGraph::path(3);
  const CoverSet not_a_cover(3, {0});
  InlineProcess p1(1, not_a_cover, g);
  CHECK(code_of([&] { p1.on_send(2, q(1)); }) == Errc::CoverMismatch);
  CHECK(p1.event_count() == 0);
}

TEST_CASE("neighbor-restricted next layout") {
  // Cover {0, 2} on the path 0-1-2-3; p3 only neighbors cover member p2.
  const auto g = CommunicationGraph::path(4);
  const CoverSet cover(4, {0, 2});
  InlineProcess p3(3, cover, g, {.neighbor_restricted = true});
  const auto ts = p3.on_compute(q(1)).timestamp;
  CHECK(ts.outside->next_positions == std::vector<std::size_t>{1});
  CHECK(element_count(ts) == 5);
  CHECK(ts.next_at(0).is_infinite());
}

TEST_CASE("inline timestamps at quiescence match the closure") {
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    RandomScenarioOptions opt;
    opt.processes = 2 + seed % 7;
    opt.max_events = 40;
    opt.seed = 500 + seed;
    auto script = random_scenario(opt);
    script.neighbor_restricted = seed % 2 == 1;
    Simulation sim(script, Algorithm::inline_ts);
    while (!sim.done()) sim.step();
    const auto& cover = sim.cover()->members();
    const oracle::Closure fw(sim.trace());
    const auto cover_clock = assign_vector_clocks(sim.trace(), cover);
    for (const auto& e : fw.events()) {
      const auto& ts = sim.inline_process(e.proc).timestamp(e.index);
      CHECK(ts.vect == fw.vector_of(e, cover));
      if (ts.in_cover()) {
        CHECK(ts.vect == cover_clock.at(e));
        continue;
      }
      CHECK(ts.outside->id == e.proc);
      CHECK(ts.outside->index == e.index);
      for (std::size_t j = 0; j < cover.size(); ++j) {
        const auto expected = oracle::earliest_receive(sim.trace(), e, cover[j]);
        CHECK(ts.next_at(j) == (expected ? NextSlot::at(*expected) : inf));
      }
    }
  }
}
