#include "causal/star_clock.hpp"

#include "causal/error.hpp"

#include <string>

namespace causal {

VectorTimestamp star_update(const StarRole& role, VectorTimestamp w) {
  if (w.size() < 2) throw Error(Errc::BadLength, "star vectors need n-1 >= 2 slots");
  if (const auto* r = std::get_if<Radial>(&role)) {
    if (r->slot >= w.size()) throw Error(Errc::BadLength, "radial slot " + std::to_string(r->slot) + " out of range");
    w[r->slot] = next_integer_above(w[r->slot]);
    return w;
  }
  for (std::size_t j = 0; j < w.size(); ++j) {
    const Rational upper = next_integer_above(w[j]);
    w[j] = (w[j] + upper) / 2;
  }
  return w;
}

std::size_t star_slot(ProcessId center, ProcessId p) { return p < center ? p : p - 1; }

StarClock::StarClock(const CommunicationGraph& graph, ProcessId self) : self_(self) {
  const auto center = graph.star_center();
  if (!center) throw Error(Errc::NotStarTopology, "graph is not a star with n >= 3");
  if (self >= graph.size()) throw Error(Errc::BadProcess, "process " + std::to_string(self));
  center_ = *center;
  if (self == center_) {
    role_ = Central{};
  } else {
    role_ = Radial{star_slot(center_, self)};
  }
  state_ = VectorTimestamp(graph.size() - 1);
}

void StarClock::check_peer(ProcessId peer) const {
  const bool ok = self_ == center_ ? peer != center_ && peer <= state_.size() : peer == center_;
  if (!ok) {
    throw Error(Errc::NotStarTopology,
                "p" + std::to_string(self_) + " cannot exchange messages with p" + std::to_string(peer));
  }
}

VectorTimestamp StarClock::advance() {
  state_ = star_update(role_, std::move(state_));
  return state_;
}

StarStep StarClock::on_compute() { return StarStep{advance(), std::nullopt}; }

StarStep StarClock::on_send(ProcessId to) {
  check_peer(to);
  auto ts = advance();
  return StarStep{ts, ts};
}

StarStep StarClock::on_receive(ProcessId from, const VectorTimestamp& piggyback) {
  check_peer(from);
  if (piggyback.size() != state_.size()) throw Error(Errc::BadLength, "piggyback length mismatch");
  state_ = vc_max(state_, piggyback);
  return StarStep{advance(), std::nullopt};
}

}  // namespace causal
