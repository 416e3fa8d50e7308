#include "causal/vector_clock.hpp"

#include "causal/error.hpp"

#include <algorithm>
#include <string>

namespace causal {

namespace {

void require_same_length(const VectorTimestamp& u, const VectorTimestamp& v) {
  if (u.size() != v.size()) {
    throw Error(Errc::LengthMismatch, std::to_string(u.size()) + " vs " + std::to_string(v.size()));
  }
}

}  // namespace

bool vc_leq(const VectorTimestamp& u, const VectorTimestamp& v) {
  require_same_length(u, v);
  for (std::size_t j = 0; j < u.size(); ++j) {
    if (u[j] > v[j]) return false;
  }
  return true;
}

bool vc_less(const VectorTimestamp& u, const VectorTimestamp& v) {
  require_same_length(u, v);
  bool strict = false;
  for (std::size_t j = 0; j < u.size(); ++j) {
    const int c = cmp(u[j], v[j]);
    if (c > 0) return false;
    strict = strict || c < 0;
  }
  return strict;
}

VectorTimestamp vc_max(const VectorTimestamp& u, const VectorTimestamp& v) {
  require_same_length(u, v);
  VectorTimestamp out = u;
  for (std::size_t j = 0; j < u.size(); ++j) {
    if (v[j] > out[j]) out[j] = v[j];
  }
  return out;
}

VectorTimestamp vc_step(const VectorTimestamp& state, std::size_t self, const std::optional<VectorTimestamp>& incoming) {
  if (self >= state.size()) throw Error(Errc::LengthMismatch, "slot " + std::to_string(self) + " out of range");
  VectorTimestamp out = incoming ? vc_max(state, *incoming) : state;
  out[self] += 1;
  return out;
}

VectorClock::VectorClock(std::size_t length, std::optional<std::size_t> own_slot, Order order)
    : clock_(length), own_slot_(own_slot), order_(order) {
  if (own_slot_ && *own_slot_ >= length) throw Error(Errc::BadLength, "own slot outside clock");
}

const VectorTimestamp& VectorClock::tick(const std::optional<VectorTimestamp>& incoming) {
  if (own_slot_ && order_ == Order::increment_then_merge) clock_[*own_slot_] += 1;
  if (incoming) clock_ = vc_max(clock_, *incoming);
  if (own_slot_ && order_ == Order::merge_then_increment) clock_[*own_slot_] += 1;
  return clock_;
}

std::map<EventId, VectorTimestamp> assign_vector_clocks(const ExecutionTrace& trace,
                                                        std::span<const ProcessId> tracked) {
  std::vector<VectorClock> clocks;
  for (ProcessId p = 0; p < trace.process_count(); ++p) {
    std::optional<std::size_t> slot;
    if (auto it = std::find(tracked.begin(), tracked.end(), p); it != tracked.end()) {
      slot = static_cast<std::size_t>(it - tracked.begin());
    }
    clocks.emplace_back(tracked.size(), slot);
  }

  std::map<EventId, VectorTimestamp> out;
  std::map<MessageId, VectorTimestamp> in_flight;
  for (const auto id : trace.time_order()) {
    const auto& ev = trace.event(id);
    std::optional<VectorTimestamp> incoming;
    if (const auto* r = std::get_if<Receive>(&ev.kind)) incoming = in_flight.at(r->msg);
    const auto& ts = clocks[id.proc].tick(incoming);
    if (const auto* s = std::get_if<Send>(&ev.kind)) in_flight.emplace(s->msg, ts);
    out.emplace(id, ts);
  }
  return out;
}

}  // namespace causal
