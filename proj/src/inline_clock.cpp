#include "causal/inline_clock.hpp"

#include "causal/error.hpp"

#include <algorithm>
#include <string>

namespace causal {

NextSlot InlineTimestamp::next_at(std::size_t position) const {
  if (!outside) return NextSlot::infinity();
  const auto& f = *outside;
  if (f.next_positions.empty()) return position < f.next.size() ? f.next[position] : NextSlot::infinity();
  const auto it = std::find(f.next_positions.begin(), f.next_positions.end(), position);
  if (it == f.next_positions.end()) return NextSlot::infinity();
  return f.next[static_cast<std::size_t>(it - f.next_positions.begin())];
}

bool InlineTimestamp::has_pending() const {
  return outside && std::any_of(outside->next.begin(), outside->next.end(),
                                [](const NextSlot& s) { return s.is_pending(); });
}

std::vector<std::size_t> InlineTimestamp::pending_positions() const {
  std::vector<std::size_t> out;
  if (!outside) return out;
  for (std::size_t k = 0; k < outside->next.size(); ++k) {
    if (!outside->next[k].is_pending()) continue;
    out.push_back(outside->next_positions.empty() ? k : outside->next_positions[k]);
  }
  return out;
}

bool inline_less(const InlineTimestamp& a, const InlineTimestamp& b) {
  if (a.has_pending() || b.has_pending()) throw Error(Errc::PendingTimestamp, "comparison needs resolved timestamps");
  if (a.in_cover()) return b.in_cover() ? vc_less(a.vect, b.vect) : vc_leq(a.vect, b.vect);
  if (!b.in_cover() && b.outside->id == a.outside->id) return a.outside->index < b.outside->index;
  if (a.vect.size() != b.vect.size()) throw Error(Errc::LengthMismatch, "inline timestamps from different covers");
  for (std::size_t i = 0; i < b.vect.size(); ++i) {
    const auto slot = a.next_at(i);
    if (slot.is_finite() && Rational(slot.index) <= b.vect[i]) return true;
  }
  return false;
}

std::size_t element_count(const InlineTimestamp& ts) {
  if (ts.in_cover()) return ts.vect.size();
  return 2 + ts.vect.size() + ts.outside->next.size();
}

namespace {

std::string pid(ProcessId p) { return "p" + std::to_string(p); }

}  // namespace

InlineProcess::InlineProcess(ProcessId self, const CoverSet& cover, const CommunicationGraph& graph, Options options)
    : self_(self),
      cover_(cover),
      own_position_(cover.position(self)),
      clock_(cover.size(), own_position_, VectorClock::Order::increment_then_merge),
      channels_(cover.size()) {
  if (self >= graph.size()) throw Error(Errc::BadProcess, pid(self));
  if (in_cover()) return;

  if (options.neighbor_restricted) {
    for (auto q : graph.neighbors(self)) {
      if (auto pos = cover.position(q)) next_positions_.push_back(*pos);
    }
    std::sort(next_positions_.begin(), next_positions_.end());
    for (std::size_t k = 0; k < next_positions_.size(); ++k) {
      channels_[next_positions_[k]].emplace();
      channels_[next_positions_[k]]->slot = k;
    }
  } else {
    for (std::size_t j = 0; j < cover.size(); ++j) {
      channels_[j].emplace();
      channels_[j]->slot = j;
    }
  }
}

InlineStep InlineProcess::record(const std::optional<VectorTimestamp>& incoming, const Rational& at) {
  const auto index = static_cast<std::uint32_t>(history_.size() + 1);
  InlineTimestamp ts{clock_.tick(incoming), std::nullopt};
  if (!in_cover()) {
    OutsideCoverFields f;
    f.id = self_;
    f.index = index;
    f.next_positions = next_positions_;
    f.next.assign(next_positions_.empty() ? cover_.size() : next_positions_.size(), NextSlot::infinity());
    ts.outside = std::move(f);
    for (auto& ch : channels_) {
      if (ch) ch->unassigned.push_back(index);
    }
  }
  history_.push_back(ts);
  times_.push_back(at);
  return InlineStep{std::move(ts), std::nullopt, std::nullopt};
}

InlineProcess::Channel& InlineProcess::channel_for(ProcessId cover_member, Errc missing_code) {
  const auto pos = cover_.position(cover_member);
  if (!pos) {
    throw Error(in_cover() ? missing_code : Errc::CoverMismatch,
                pid(self_) + " and " + pid(cover_member) + " are both outside the cover");
  }
  auto& ch = channels_[*pos];
  if (!ch) throw Error(missing_code, pid(cover_member) + " is not a cover neighbor of " + pid(self_));
  return *ch;
}

InlineStep InlineProcess::on_compute(const Rational& at) { return record(std::nullopt, at); }

InlineStep InlineProcess::on_send(ProcessId to, const Rational& at) {
  Channel* target = in_cover() ? nullptr : &channel_for(to, Errc::NoChannel);
  auto step = record(std::nullopt, at);
  const auto index = static_cast<std::uint32_t>(history_.size());
  step.piggyback = InlinePiggyback{clock_.current(), std::nullopt};
  if (!target) return step;

  step.piggyback->sender_index = index;
  auto& ch = *target;
  // Every local event whose entry is still infinite precedes this send (or is it).
  PendingBatch batch{index, std::move(ch.unassigned)};
  ch.unassigned.clear();
  for (auto e : batch.events) history_[e - 1].outside->next[ch.slot] = NextSlot::pending();
  ch.pending.push_back(std::move(batch));
  ch.unacknowledged.insert(index);
  step.timestamp = history_.back();
  return step;
}

InlineStep InlineProcess::on_receive(ProcessId from, const InlinePiggyback& piggyback, const Rational& at) {
  if (piggyback.clock.size() != cover_.size()) throw Error(Errc::LengthMismatch, "piggyback clock length");
  const bool sender_outside = piggyback.sender_index.has_value();
  if (sender_outside && !in_cover()) {
    throw Error(Errc::CoverMismatch, pid(from) + " and " + pid(self_) + " are both outside the cover");
  }
  auto step = record(piggyback.clock, at);
  if (sender_outside) {
    step.control = ControlMessage{self_, from, *piggyback.sender_index, static_cast<std::uint32_t>(history_.size())};
  }
  return step;
}

void InlineProcess::on_control(const ControlMessage& cm) {
  if (cm.to != self_) throw Error(Errc::UnknownSendIndex, "control message addressed to " + pid(cm.to));
  if (in_cover()) throw Error(Errc::UnknownSendIndex, "cover process " + pid(self_) + " sends no tracked messages");
  auto& ch = channel_for(cm.from, Errc::UnknownSendIndex);
  if (ch.acknowledged.contains(cm.send_index)) {
    throw Error(Errc::OutOfOrderControl, "duplicate control for send " + std::to_string(cm.send_index));
  }
  if (!ch.unacknowledged.contains(cm.send_index)) {
    throw Error(Errc::UnknownSendIndex, "no send " + std::to_string(cm.send_index) + " from " + pid(self_) +
                                            " to " + pid(cm.from));
  }
  if (cm.recv_index <= ch.last_recv_index) {
    throw Error(Errc::OutOfOrderControl, "receive index " + std::to_string(cm.recv_index) + " after " +
                                             std::to_string(ch.last_recv_index));
  }
  ch.unacknowledged.erase(cm.send_index);
  ch.acknowledged.insert(cm.send_index);
  ch.last_recv_index = cm.recv_index;

  while (!ch.pending.empty() && ch.pending.front().send_index <= cm.send_index) {
    for (auto e : ch.pending.front().events) history_[e - 1].outside->next[ch.slot] = NextSlot::at(cm.recv_index);
    ch.pending.pop_front();
  }
}

QueryResult InlineProcess::query(std::uint32_t index, const Rational& now) const {
  const auto& ts = timestamp(index);
  if (now < times_[index - 1]) {
    throw Error(Errc::QueryBeforeEvent, "(" + pid(self_) + ", " + std::to_string(index) + ") at " +
                                            to_fraction_string(now));
  }
  if (ts.has_pending()) return Blocked{ts.pending_positions()};
  return Ready{ts};
}

const InlineTimestamp& InlineProcess::timestamp(std::uint32_t index) const {
  if (index == 0 || index > history_.size()) {
    throw Error(Errc::UnknownEvent, "(" + pid(self_) + ", " + std::to_string(index) + ")");
  }
  return history_[index - 1];
}

std::size_t InlineProcess::pending_batches(std::size_t position) const {
  if (position >= channels_.size() || !channels_[position]) return 0;
  return channels_[position]->pending.size();
}

}  // namespace causal
