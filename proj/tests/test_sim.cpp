#include "oracles.hpp"

#include "causal/adversary.hpp"
#include "causal/error.hpp"
#include "causal/generators.hpp"
#include "causal/serialize.hpp"
#include "causal/simulator.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>

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

Action send_at(Rational at, ProcessId from, ProcessId to, Rational delay) {
  return {std::move(at), from, SendAction{to, std::move(delay)}};
}
Action compute_at(Rational at, ProcessId p) { return {std::move(at), p, ComputeAction{}}; }

ScenarioScript two_process() {
  ScenarioScript s;
  s.id = "pair";
  s.processes = 2;
  s.edges = {{0, 1}};
  return s;
}

}  // namespace

TEST_CASE("empty script") {
  auto s = two_process();
  for (auto algo : {Algorithm::vclock, Algorithm::inline_ts}) {
    const auto r = run(s, algo);
    CHECK(r.trace.total_events() == 0);
    CHECK(r.timestamps.empty());
    CHECK(r.queries.empty());
    CHECK(r.controls.empty());
  }
}

TEST_CASE("script validation") {
  auto s = two_process();
  s.actions = {send_at(1, 0, 1, 0)};
  CHECK(code_of([&] { run(s, Algorithm::vclock); }) == Errc::ScriptInvalid);
  s.actions = {compute_at(2, 0), compute_at(1, 0)};
  CHECK(code_of([&] { run(s, Algorithm::vclock); }) == Errc::ScriptInvalid);
  s.actions = {compute_at(1, 0), compute_at(1, 0)};
  CHECK(code_of([&] { run(s, Algorithm::vclock); }) == Errc::ScriptInvalid);
  auto t = two_process();
  t.processes = 3;
  t.actions = {send_at(1, 0, 2, 1)};
  CHECK(code_of([&] { run(t, Algorithm::vclock); }) == Errc::ScriptInvalid);
  auto u = two_process();
  u.control_delay.fallback = 0;
  CHECK(code_of([&] { run(u, Algorithm::inline_ts); }) == Errc::ScriptInvalid);
  auto v = two_process();
  v.cover = {CoverSpec::Mode::given, {}};
  v.actions = {compute_at(1, 0)};
  CHECK(code_of([&] { run(v, Algorithm::inline_ts); }) == Errc::InvalidCover);
  CHECK(code_of([&] { run(two_process(), Algorithm::star); }) == Errc::AlgorithmTopologyMismatch);
  CHECK(code_of([] { Simulation(two_process(), std::unique_ptr<OnlineTimestamper>{}); }) == Errc::InvalidArgument);
}

TEST_CASE("receive lands exactly after the scripted delay") {
  auto s = two_process();
  s.actions = {send_at(Rational(1, 3), 0, 1, Rational(1, 2))};
  const auto r = run(s, Algorithm::vclock);
  CHECK(r.trace.event({1, 1}).at == Rational(5, 6));
}

TEST_CASE("queries: ready, blocked with unblock time, errors") {
  auto s = two_process();
  s.cover = {CoverSpec::Mode::given, {0}};
  s.control_delay.fallback = 2;
  s.actions = {compute_at(1, 1), send_at(2, 1, 0, 1)};
  s.queries = {{1, 1, 1}, {1, 1, 4}, {1, 1, 6}, {1, 1, Rational(1, 2)}, {1, 9, 8}};
  const auto r = run(s, Algorithm::inline_ts);
  // The log is in query-time order.
  REQUIRE(r.queries.size() == 5);
  CHECK(r.queries[0].status == QueryRecord::Status::error);
  CHECK(r.queries[0].error == "QueryBeforeEvent");
  CHECK(r.queries[1].status == QueryRecord::Status::ready);
  CHECK(std::get<InlineTimestamp>(*r.queries[1].answer).next_at(0).is_infinite());
  CHECK(r.queries[2].status == QueryRecord::Status::blocked);
  CHECK(r.queries[2].missing == std::vector<std::size_t>{0});
  CHECK(r.queries[2].unblocked_at == Rational(5));
  CHECK(std::get<InlineTimestamp>(*r.queries[2].answer).next_at(0) == NextSlot::at(1));
  CHECK(r.queries[3].status == QueryRecord::Status::ready);
  CHECK(r.queries[4].error == "UnknownEvent");
  REQUIRE(r.controls.size() == 1);
  CHECK(r.controls[0].message == ControlMessage{0, 1, 2, 1});
  CHECK(r.controls[0].delivered_at == Rational(5));
}

TEST_CASE("control messages are delivered in send order per pair") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    RandomScenarioOptions opt;
    opt.processes = 3 + seed % 6;
    opt.seed = seed;
    const auto r = run(random_scenario(opt), Algorithm::inline_ts);
    std::map<std::pair<ProcessId, ProcessId>, std::pair<Rational, Rational>> last;
    for (const auto& c : r.controls) {
      CHECK(c.delivered_at > c.sent_at);
      const std::pair key{c.message.from, c.message.to};
      if (auto it = last.find(key); it != last.end()) {
        CHECK(c.sent_at >= it->second.first);
        CHECK(c.delivered_at >= it->second.second);
      }
      last[key] = {c.sent_at, c.delivered_at};
    }
  }
}

TEST_CASE("random scenarios are valid and connected") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    RandomScenarioOptions opt;
    opt.processes = 1 + seed % 8;
    opt.max_events = 40;
    opt.seed = seed;
    const auto s = random_scenario(opt);
    CHECK_NOTHROW(validate(s));
    CHECK(is_connected(build_graph(s)));
    const auto r = run(s, Algorithm::vclock);
    CHECK(r.trace.total_events() <= 40);
  }
}

TEST_CASE("star concurrent generator") {
  const auto s = star_concurrent_scenario(4, {}, 3);
  const auto r = run(s, Algorithm::vclock);
  const CausalityOracle o(r.trace);
  CHECK(o.concurrent({3, 1}, {0, 2}));
  for (ProcessId a = 1; a < 4; ++a) {
    for (ProcessId b = a + 1; b < 4; ++b) CHECK(o.concurrent({a, 1}, {b, 1}));
  }
  const auto& receives = r.trace.events(0);
  REQUIRE(receives.size() == 3);
  CHECK(r.trace.messages().at(std::get<Receive>(receives.back().kind).msg).send.proc == 3);

  const std::vector<ProcessId> order{3, 2, 1};
  const auto r2 = run(star_concurrent_scenario(4, order, 2), Algorithm::vclock);
  std::vector<ProcessId> senders;
  for (const auto& e : r2.trace.events(0)) senders.push_back(r2.trace.messages().at(std::get<Receive>(e.kind).msg).send.proc);
  CHECK(senders == std::vector<ProcessId>{3, 1, 2});

  CHECK(run(star_concurrent_scenario(3, {}, 1), Algorithm::vclock).trace.total_events() == 4);
  CHECK(code_of([] { star_concurrent_scenario(4, {}, 0); }) == Errc::BadProcess);
  CHECK(code_of([] { star_concurrent_scenario(4, {}, 7); }) == Errc::BadProcess);
  const std::vector<ProcessId> short_order{1, 2};
  CHECK(code_of([&] { star_concurrent_scenario(4, short_order, 1); }) == Errc::BadProcess);
  CHECK(code_of([] { star_concurrent_scenario(2, {}, 1); }) == Errc::InvalidArgument);
}

TEST_CASE("flooding generator") {
  const auto g = CommunicationGraph::complete(4);
  CHECK(flooding_span(g) == 1);
  CHECK(flooding_span(CommunicationGraph::cycle(6)) == 4);
  const Rational delta(1);
  const auto s = flooding_scenario(g, 3, delta, Rational(20));
  for (const auto& a : s.actions) {
    const auto& send = std::get<SendAction>(a.kind);
    if (a.proc == 3 || send.to == 3) {
      CHECK(send.delay > 2 * delta * flooding_span(g));
    } else {
      CHECK(send.delay < delta);
    }
  }
  const auto r = run(s, Algorithm::vclock);
  const CausalityOracle o(r.trace);
  const Rational by = delta * flooding_span(g);
  auto reached = [&](ProcessId from, ProcessId at) {
    for (const auto& e : r.trace.events(at)) {
      if (e.at <= by && o.happened_before({from, 1}, e.id)) return true;
    }
    return false;
  };
  for (ProcessId i = 0; i < 3; ++i) {
    for (ProcessId j = 0; j < 3; ++j) {
      if (i != j) CHECK(reached(i, j));
    }
    CHECK_FALSE(reached(3, i));
  }

  const auto path = flooding_scenario(CommunicationGraph::path(3), 1, delta, Rational(20));
  CHECK_NOTHROW(run(path, Algorithm::vclock));
  CHECK(non_cut_set(CommunicationGraph::path(3)) == std::vector<ProcessId>{0, 2});

  const auto initial = flooding_scenario(g, 3, delta, Rational(0));
  CHECK(initial.actions.size() == 12);
  std::set<std::pair<ProcessId, ProcessId>> pairs;
  for (const auto& a : initial.actions) {
    CHECK(a.at < delta / 2);
    pairs.emplace(a.proc, std::get<SendAction>(a.kind).to);
  }
  CHECK(pairs.size() == 12);

  CHECK(code_of([] { flooding_scenario(CommunicationGraph(4, {{0, 1}}), 0, Rational(1), Rational(5)); }) ==
        Errc::Disconnected);
}

TEST_CASE("adversary guards and outcomes") {
  StarStamper star;
  CHECK(code_of([&] { adversary_lemma1(star, 4); }) == Errc::CandidateVectorTooLong);
  TruncatedVectorClock two(2);
  CHECK(code_of([&] { adversary_lemma1(two, 3); }) == Errc::CandidateVectorTooLong);
  CHECK(code_of([&] { adversary_lemma1(two, 2); }) == Errc::InvalidArgument);

  ConstantZero zero;
  const auto z = adversary_lemma1(zero, 4);
  REQUIRE(std::holds_alternative<Violation>(z.outcome));
  CHECK(std::get<Violation>(z.outcome).kind == Violation::Kind::duplicate);

  const auto t = adversary_lemma1(two, 4);
  REQUIRE(std::holds_alternative<Violation>(t.outcome));
  const auto& v = std::get<Violation>(t.outcome);
  CHECK(v.first == EventId{t.last_sender, 1});
  CHECK(v.second == EventId{0, 2});
  CHECK_FALSE(v.first_before_second);
  CHECK_FALSE(v.second_before_first);
  CHECK(std::find(t.dominating.begin(), t.dominating.end(), t.last_sender) == t.dominating.end());
}

TEST_CASE("rational JSON") {
  CHECK(rational_json(Rational(3)) == Json(3));
  CHECK(rational_json(Rational(1, 2)) == Json("1/2"));
  CHECK(rational_from_json(Json("6/4")) == Rational(3, 2));
  CHECK(rational_from_json(Json(7)) == 7);
  CHECK(code_of([] { (void)rational_from_json(Json(1.5)); }) == Errc::ParseError);
  CHECK(code_of([] { (void)rational_from_json(Json("1/0")); }) == Errc::ParseError);
  CHECK(code_of([] { (void)rational_from_json(Json("x")); }) == Errc::ParseError);
}

TEST_CASE("timestamp and trace JSON") {
  const InlineTimestamp h{{0, 1}, OutsideCoverFields{3, 1, {NextSlot::at(3), NextSlot::pending()}, {}}};
  CHECK(to_json(h).dump() == R"({"id":3,"index":1,"vect":[0,1],"next":[3,"pending"]})");
  const InlineTimestamp e{{3, 1}, std::nullopt};
  CHECK(to_json(e).dump() == R"({"id":null,"index":null,"vect":[3,1],"next":null})");
  CHECK(to_json(VectorTimestamp{Rational(3, 2), 2}).dump() == R"(["3/2",2])");
  CHECK(to_json(ControlMessage{1, 3, 4, 5}).dump() == R"({"from":1,"to":3,"send_index":4,"recv_index":5})");
  CHECK(format(h) == "(p3,1,(0,1),(3,?))");

  auto s = two_process();
  s.actions = {send_at(1, 0, 1, Rational(1, 2))};
  const auto j = to_json(run(s, Algorithm::vclock).trace);
  CHECK(j["events"][0][0]["at"] == "1/1");
  CHECK(j["events"][0][0]["to"] == 1);
  CHECK(j["events"][1][0]["at"] == "3/2");
  CHECK(j["events"][1][0]["kind"] == "receive");
  CHECK(j["messages"][0]["recv_index"] == 1);
}

TEST_CASE("scenario JSON round trip") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RandomScenarioOptions opt;
    opt.seed = seed;
    opt.cover.mode = seed % 2 ? CoverSpec::Mode::greedy : CoverSpec::Mode::exact;
    auto s = random_scenario(opt);
    s.queries = {{0, 1, Rational(7, 3)}};
    const auto j = to_json(s);
    CHECK(to_json(scenario_from_json(j)).dump() == j.dump());
  }
  auto g = two_process();
  g.cover = {CoverSpec::Mode::given, {0}};
  g.neighbor_restricted = true;
  CHECK(to_json(scenario_from_json(to_json(g))).dump() == to_json(g).dump());
  CHECK(code_of([] { (void)scenario_from_json(Json::parse(R"({"edges":[]})")); }) == Errc::ParseError);
  CHECK(code_of([] { (void)scenario_from_json(Json::parse(R"({"processes":2,"cover":"best"})")); }) ==
        Errc::ParseError);
  CHECK(code_of([] {
          (void)scenario_from_json(Json::parse(R"({"processes":2,"actions":[{"at":1,"proc":0,"kind":"jump"}]})"));
        }) == Errc::ParseError);
}

TEST_CASE("load_scenario errors") {
  CHECK(code_of([] { load_scenario("/nonexistent/scenario.json"); }) == Errc::FileNotFound);
  const auto path = std::filesystem::temp_directory_path() / "causal_bad_scenario.json";
  std::ofstream(path) << "{ not json";
  CHECK(code_of([&] { load_scenario(path); }) == Errc::ParseError);
  std::filesystem::remove(path);
}

TEST_CASE("identical scripts give identical logs") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    RandomScenarioOptions opt;
    opt.processes = 5;
    opt.seed = seed;
    for (auto algo : {Algorithm::vclock, Algorithm::inline_ts}) {
      CHECK(to_json(run(random_scenario(opt), algo)).dump() == to_json(run(random_scenario(opt), algo)).dump());
    }
  }
}
