#include "causal/timestampers.hpp"

#include "causal/error.hpp"

#include <charconv>

namespace causal {

void VectorClockStamper::reset(const CommunicationGraph& graph) {
  clocks_.clear();
  for (std::size_t p = 0; p < graph.size(); ++p) clocks_.emplace_back(graph.size(), p);
}

Stamp VectorClockStamper::on_event(ProcessId proc, StampKind kind, ProcessId,
                                   const std::optional<VectorTimestamp>& piggyback) {
  const auto& ts = clocks_.at(proc).tick(kind == StampKind::receive ? piggyback : std::nullopt);
  Stamp out{ts, std::nullopt};
  if (kind == StampKind::send) out.piggyback = ts;
  return out;
}

void StarStamper::reset(const CommunicationGraph& graph) {
  clocks_.clear();
  for (ProcessId p = 0; p < graph.size(); ++p) clocks_.emplace_back(graph, p);
}

Stamp StarStamper::on_event(ProcessId proc, StampKind kind, ProcessId peer,
                            const std::optional<VectorTimestamp>& piggyback) {
  auto& clock = clocks_.at(proc);
  StarStep step;
  switch (kind) {
    case StampKind::compute: step = clock.on_compute(); break;
    case StampKind::send: step = clock.on_send(peer); break;
    case StampKind::receive:
      if (!piggyback) throw Error(Errc::BadLength, "receive without piggyback");
      step = clock.on_receive(peer, *piggyback);
      break;
  }
  return Stamp{std::move(step.timestamp), std::move(step.piggyback)};
}

void TruncatedVectorClock::reset(const CommunicationGraph& graph) { full_.reset(graph); }

Stamp TruncatedVectorClock::on_event(ProcessId proc, StampKind kind, ProcessId peer,
                                     const std::optional<VectorTimestamp>& piggyback) {
  auto stamp = full_.on_event(proc, kind, peer, piggyback);
  const auto& elems = stamp.timestamp.elems();
  const auto keep = std::min(keep_, elems.size());
  stamp.timestamp = VectorTimestamp(std::vector<Rational>(elems.begin(), elems.begin() + static_cast<long>(keep)));
  return stamp;
}

void LamportScalar::reset(const CommunicationGraph& graph) { counters_.assign(graph.size(), Rational(0)); }

Stamp LamportScalar::on_event(ProcessId proc, StampKind kind, ProcessId,
                              const std::optional<VectorTimestamp>& piggyback) {
  auto& c = counters_.at(proc);
  if (kind == StampKind::receive && piggyback && (*piggyback)[0] > c) c = (*piggyback)[0];
  c += 1;
  VectorTimestamp ts{c};
  Stamp out{ts, std::nullopt};
  if (kind == StampKind::send) out.piggyback = ts;
  return out;
}

Stamp ConstantZero::on_event(ProcessId, StampKind kind, ProcessId, const std::optional<VectorTimestamp>&) {
  Stamp out{VectorTimestamp(1), std::nullopt};
  if (kind == StampKind::send) out.piggyback = out.timestamp;
  return out;
}

std::unique_ptr<OnlineTimestamper> make_timestamper(std::string_view spec) {
  if (spec == "vclock") return std::make_unique<VectorClockStamper>();
  if (spec == "star") return std::make_unique<StarStamper>();
  if (spec == "lamport-scalar") return std::make_unique<LamportScalar>();
  if (spec == "zero") return std::make_unique<ConstantZero>();
  constexpr std::string_view prefix = "truncated-vclock:";
  if (spec.starts_with(prefix)) {
    const auto digits = spec.substr(prefix.size());
    std::size_t keep = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), keep);
    if (ec == std::errc{} && ptr == digits.data() + digits.size() && keep > 0) {
      return std::make_unique<TruncatedVectorClock>(keep);
    }
  }
  throw Error(Errc::InvalidArgument, "unknown candidate '" + std::string(spec) + "'");
}

}  // namespace causal
