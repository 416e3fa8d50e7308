#include "causal/adversary.hpp"

#include "causal/error.hpp"
#include "causal/generators.hpp"
#include "causal/simulator.hpp"

#include <algorithm>

namespace causal {

std::string_view to_string(Violation::Kind kind) noexcept {
  switch (kind) {
    case Violation::Kind::duplicate: return "duplicate";
    case Violation::Kind::false_order: return "false_order";
    case Violation::Kind::missed_order: return "missed_order";
  }
  return "unknown";
}

namespace {

// Lets run() drive a candidate owned by the caller.
class Borrowed final : public OnlineTimestamper {
 public:
  explicit Borrowed(OnlineTimestamper& inner) : inner_(inner) {}
  std::string name() const override { return inner_.name(); }
  std::size_t length(std::size_t n) const override { return inner_.length(n); }
  void reset(const CommunicationGraph& graph) override { inner_.reset(graph); }
  Stamp on_event(ProcessId proc, StampKind kind, ProcessId peer,
                 const std::optional<VectorTimestamp>& piggyback) override {
    return inner_.on_event(proc, kind, peer, piggyback);
  }

 private:
  OnlineTimestamper& inner_;
};

std::map<EventId, VectorTimestamp> collect(const RunResult& r, std::size_t length) {
  std::map<EventId, VectorTimestamp> out;
  for (const auto& rec : r.timestamps) {
    const auto& ts = std::get<VectorTimestamp>(rec.timestamp);
    if (ts.size() != length) throw Error(Errc::BadLength, "candidate emitted a vector of the wrong length");
    out.emplace(rec.event, ts);
  }
  return out;
}

std::optional<Violation> judge(EventId a, EventId b, const std::map<EventId, VectorTimestamp>& ts,
                               const CausalityOracle& oracle) {
  Violation v{Violation::Kind::duplicate, a, b, ts.at(a), ts.at(b), oracle.happened_before(a, b),
              oracle.happened_before(b, a)};
  if (v.first_timestamp == v.second_timestamp) return v;
  const bool claimed = vc_less(v.first_timestamp, v.second_timestamp);
  if (claimed && !v.first_before_second) {
    v.kind = Violation::Kind::false_order;
    return v;
  }
  if (!claimed && v.first_before_second) {
    v.kind = Violation::Kind::missed_order;
    return v;
  }
  return std::nullopt;
}

}  // namespace

AdversaryReport adversary_lemma1(OnlineTimestamper& candidate, std::size_t n) {
  if (n < 3) throw Error(Errc::InvalidArgument, "the construction needs n >= 3");
  const auto s = candidate.length(n);
  if (s > n - 2) {
    throw Error(Errc::CandidateVectorTooLong, candidate.name() + " uses length " + std::to_string(s) +
                                                  " > n-2 = " + std::to_string(n - 2));
  }

  // Phase one: stamps of the radial sends do not depend on the delivery order.
  const auto probe = run(star_concurrent_scenario(n, {}, static_cast<ProcessId>(n - 1)),
                         std::make_unique<Borrowed>(candidate));
  const auto first = collect(probe, s);
  auto send_stamp = [&](ProcessId p) -> const VectorTimestamp& { return first.at(EventId{p, 1}); };

  AdversaryReport report;
  report.candidate = candidate.name();
  report.n = n;
  report.length = s;
  for (std::size_t l = 0; l < s; ++l) {
    ProcessId best = 1;
    for (ProcessId p = 2; p < n; ++p) {
      if (send_stamp(p)[l] > send_stamp(best)[l]) best = p;
    }
    if (std::find(report.dominating.begin(), report.dominating.end(), best) == report.dominating.end()) {
      report.dominating.push_back(best);
    }
  }
  ProcessId k = 1;
  while (std::find(report.dominating.begin(), report.dominating.end(), k) != report.dominating.end()) ++k;
  report.last_sender = k;

  auto result = run(star_concurrent_scenario(n, {}, k), std::make_unique<Borrowed>(candidate));
  report.timestamps = collect(result, s);
  for (ProcessId p = 1; p < n; ++p) {
    if (report.timestamps.at(EventId{p, 1}) != send_stamp(p)) {
      throw Error(Errc::InvalidArgument, candidate.name() + " is not online: send stamps changed with delivery order");
    }
  }
  report.trace = std::move(result.trace);
  report.outcome = NoViolationFound{};

  const CausalityOracle oracle(report.trace);
  const EventId lagging{k, 1};
  const EventId before_last{0, static_cast<std::uint32_t>(n - 2)};
  if (auto v = judge(lagging, before_last, report.timestamps, oracle)) {
    report.outcome = *v;
    return report;
  }
  const auto order = report.trace.time_order();
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t j = 0; j < order.size(); ++j) {
      if (i == j) continue;
      if (auto v = judge(order[i], order[j], report.timestamps, oracle)) {
        report.outcome = *v;
        return report;
      }
    }
  }
  return report;
}

}  // namespace causal
