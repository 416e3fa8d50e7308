#include "causal/oracle_check.hpp"

#include <map>

namespace causal {

void CheckReport::merge(const CheckReport& other) {
  runs += other.runs;
  events += other.events;
  comparisons += other.comparisons;
  for (std::size_t i = 0; i < cases.size(); ++i) cases[i] += other.cases[i];
  samples += other.samples;
  ready_answers += other.ready_answers;
  blocked_answers += other.blocked_answers;
  size_violations += other.size_violations;
  mutation_violations += other.mutation_violations;
  distinctness_violations += other.distinctness_violations;
  disagreement_count += other.disagreement_count;
  for (const auto& d : other.disagreements) {
    if (disagreements.size() >= kMaxKept) break;
    disagreements.push_back(d);
  }
}

int inline_case(const InlineTimestamp& a, const InlineTimestamp& b) {
  if (a.in_cover()) return b.in_cover() ? 2 : 3;
  if (!b.in_cover() && b.outside->id == a.outside->id) return 1;
  return 4;
}

namespace {

bool slot_moved_legally(const NextSlot& before, const NextSlot& after) {
  switch (before.state) {
    case NextSlot::State::infinite: return true;
    case NextSlot::State::pending: return !after.is_infinite();
    case NextSlot::State::finite: return after == before;
  }
  return false;
}

bool mutated(const InlineTimestamp& before, const InlineTimestamp& after) {
  if (before.vect != after.vect || before.in_cover() != after.in_cover()) return true;
  if (before.in_cover()) return false;
  const auto& b = *before.outside;
  const auto& a = *after.outside;
  if (b.id != a.id || b.index != a.index || b.next_positions != a.next_positions) return true;
  if (b.next.size() != a.next.size()) return true;
  for (std::size_t i = 0; i < b.next.size(); ++i) {
    if (!slot_moved_legally(b.next[i], a.next[i])) return true;
  }
  return false;
}

std::size_t expected_elements(const InlineTimestamp& ts, std::size_t c) {
  if (ts.in_cover()) return c;
  const auto& o = *ts.outside;
  return 2 + c + (o.next_positions.empty() ? c : o.next_positions.size());
}

struct Snapshot {
  Rational at;
  std::vector<std::pair<EventId, InlineTimestamp>> ready;
};

void record(CheckReport& report, Disagreement d) {
  ++report.disagreement_count;
  if (report.disagreements.size() < CheckReport::kMaxKept) report.disagreements.push_back(std::move(d));
}

CheckReport check_inline(const ScenarioScript& script, RunResult* out) {
  CheckReport report;
  report.runs = 1;
  std::vector<Snapshot> snapshots;
  std::map<EventId, InlineTimestamp> raw;

  Simulation sim(script, Algorithm::inline_ts);
  const std::size_t c = sim.cover()->size();
  auto observe = [&] {
    Snapshot snap{sim.now(), {}};
    for (ProcessId p = 0; p < sim.graph().size(); ++p) {
      const auto& proc = sim.inline_process(p);
      for (std::uint32_t i = 1; i <= proc.event_count(); ++i) {
        const EventId id{p, i};
        const auto& ts = proc.timestamp(i);
        if (element_count(ts) != expected_elements(ts, c)) ++report.size_violations;
        auto [it, fresh] = raw.try_emplace(id, ts);
        if (!fresh) {
          if (mutated(it->second, ts)) ++report.mutation_violations;
          it->second = ts;
        }
        auto answer = sim.query(id);
        if (const auto* ready = std::get_if<AnyTimestamp>(&answer)) {
          ++report.ready_answers;
          snap.ready.emplace_back(id, std::get<InlineTimestamp>(*ready));
        } else {
          ++report.blocked_answers;
        }
      }
    }
    snapshots.push_back(std::move(snap));
  };
  while (!sim.done()) {
    sim.step();
    observe();
  }
  // Quiescence: all controls delivered; one last sample unless the final step already was it.
  if (snapshots.empty()) observe();
  report.samples = snapshots.size();

  auto result = std::move(sim).finish();
  report.events = result.trace.total_events();
  const CausalityOracle oracle(result.trace);
  for (const auto& snap : snapshots) {
    for (const auto& [e, te] : snap.ready) {
      for (const auto& [f, tf] : snap.ready) {
        if (e == f) continue;
        const int kase = inline_case(te, tf);
        ++report.cases[static_cast<std::size_t>(kase - 1)];
        ++report.comparisons;
        const bool claimed = inline_less(te, tf);
        const bool actual = oracle.happened_before(e, f);
        if (claimed != actual) record(report, {e, f, snap.at, claimed, actual, kase});
      }
    }
  }
  if (out) *out = std::move(result);
  return report;
}

CheckReport check_online(const ScenarioScript& script, Algorithm algo, RunResult* out) {
  CheckReport report;
  report.runs = 1;
  auto result = run(script, algo);
  report.events = result.trace.total_events();
  report.samples = 1;
  const std::size_t n = result.trace.process_count();
  const std::size_t length = algo == Algorithm::star ? n - 1 : n;
  const CausalityOracle oracle(result.trace);
  std::vector<std::pair<EventId, const VectorTimestamp*>> stamps;
  for (const auto& rec : result.timestamps) {
    const auto& ts = std::get<VectorTimestamp>(rec.timestamp);
    if (ts.size() != length) ++report.size_violations;
    stamps.emplace_back(rec.event, &ts);
  }
  report.ready_answers = stamps.size();
  for (const auto& [e, te] : stamps) {
    for (const auto& [f, tf] : stamps) {
      if (e == f) continue;
      ++report.comparisons;
      if (*te == *tf && e < f) ++report.distinctness_violations;
      const bool claimed = te->size() == tf->size() && vc_less(*te, *tf);
      const bool actual = oracle.happened_before(e, f);
      if (claimed != actual) record(report, {e, f, std::nullopt, claimed, actual, 0});
    }
  }
  if (out) *out = std::move(result);
  return report;
}

}  // namespace

CheckReport check_run(const ScenarioScript& script, Algorithm algo, RunResult* result) {
  return algo == Algorithm::inline_ts ? check_inline(script, result) : check_online(script, algo, result);
}

}  // namespace causal
