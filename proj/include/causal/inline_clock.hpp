#pragma once

#include "causal/error.hpp"
#include "causal/graph.hpp"
#include "causal/vector_clock.hpp"

#include <cstdint>
#include <deque>
#include <optional>
#include <set>
#include <variant>
#include <vector>

namespace causal {

/// One `next` entry. Transitions infinite -> pending -> finite, each at most once.
struct NextSlot {
  enum class State : std::uint8_t { infinite, pending, finite };

  State state = State::infinite;
  std::uint32_t index = 0;  // meaningful only when finite

  static NextSlot infinity() { return {}; }
  static NextSlot pending() { return {State::pending, 0}; }
  static NextSlot at(std::uint32_t index) { return {State::finite, index}; }

  bool is_finite() const noexcept { return state == State::finite; }
  bool is_pending() const noexcept { return state == State::pending; }
  bool is_infinite() const noexcept { return state == State::infinite; }

  friend bool operator==(const NextSlot&, const NextSlot&) = default;
};

/// Fields carried only by events at processes outside the cover.
struct OutsideCoverFields {
  ProcessId id = 0;
  std::uint32_t index = 0;
  std::vector<NextSlot> next;
  /// Cover positions of the `next` entries. Empty means one entry per cover position.
  std::vector<std::size_t> next_positions;

  friend bool operator==(const OutsideCoverFields&, const OutsideCoverFields&) = default;
};

/// Inline timestamp: just `vect` for events in the cover; (id, index, vect, next) otherwise.
struct InlineTimestamp {
  VectorTimestamp vect;
  std::optional<OutsideCoverFields> outside;

  bool in_cover() const noexcept { return !outside.has_value(); }
  /// Entry for a cover position; absent entries of a neighbor-restricted layout read as infinity.
  NextSlot next_at(std::size_t position) const;
  bool has_pending() const;
  std::vector<std::size_t> pending_positions() const;

  friend bool operator==(const InlineTimestamp&, const InlineTimestamp&) = default;
};

/// The four-way order on inline timestamps:
///   (i)   same non-cover process: index order
///   (ii)  both in cover: vector order
///   (iii) cover vs non-cover: element-wise vect <=
///   (iv)  non-cover vs anything else: some finite next[i] <= other.vect[i]
/// Throws Error(PendingTimestamp) if either side still has a pending entry.
bool inline_less(const InlineTimestamp& a, const InlineTimestamp& b);

/// c for cover events; 2 + c + |next| otherwise (2c + 2 with the full layout).
std::size_t element_count(const InlineTimestamp& ts);

/// Piggybacked on application messages: the sender's clock and, for senders outside
/// the cover, the index of the send event.
struct InlinePiggyback {
  VectorTimestamp clock;
  std::optional<std::uint32_t> sender_index;
};

/// Sent by a cover process back to a non-cover sender when it receives that sender's message.
struct ControlMessage {
  ProcessId from = 0;
  ProcessId to = 0;
  std::uint32_t send_index = 0;
  std::uint32_t recv_index = 0;

  friend bool operator==(const ControlMessage&, const ControlMessage&) = default;
};

struct Ready {
  InlineTimestamp timestamp;
};
struct Blocked {
  std::vector<std::size_t> missing;  // cover positions still pending
};
using QueryResult = std::variant<Ready, Blocked>;

struct InlineStep {
  InlineTimestamp timestamp;
  std::optional<InlinePiggyback> piggyback;  // send events
  std::optional<ControlMessage> control;     // receives at a cover process from outside it
};

/// State of one process running the inline algorithm.
class InlineProcess {
 public:
  struct Options {
    /// Keep `next` entries only for cover neighbors of a non-cover process.
    bool neighbor_restricted = false;
  };

  InlineProcess(ProcessId self, const CoverSet& cover, const CommunicationGraph& graph, Options options);
  InlineProcess(ProcessId self, const CoverSet& cover, const CommunicationGraph& graph)
      : InlineProcess(self, cover, graph, Options{}) {}

  InlineStep on_compute(const Rational& at);
  /// Throws Error(CoverMismatch) when both endpoints are outside the cover.
  InlineStep on_send(ProcessId to, const Rational& at);
  /// Throws Error(CoverMismatch) when both endpoints are outside the cover.
  InlineStep on_receive(ProcessId from, const InlinePiggyback& piggyback, const Rational& at);

  /// Resolves every pending batch whose send index is <= cm.send_index. Control messages
  /// from one cover process arrive in its receive order, so the first one covering an
  /// event carries the earliest receive there of a message sent at or after that event.
  /// Throws UnknownSendIndex (no such send to cm.from) and OutOfOrderControl (duplicate,
  /// or receive index not increasing along the control channel).
  void on_control(const ControlMessage& cm);

  /// Throws UnknownEvent, QueryBeforeEvent.
  QueryResult query(std::uint32_t index, const Rational& now) const;

  /// Current (possibly pending) timestamp of a local event. Throws UnknownEvent.
  const InlineTimestamp& timestamp(std::uint32_t index) const;

  ProcessId self() const noexcept { return self_; }
  bool in_cover() const noexcept { return own_position_.has_value(); }
  std::size_t event_count() const noexcept { return history_.size(); }
  const VectorTimestamp& clock() const noexcept { return clock_.current(); }
  /// Number of unresolved pending batches towards a cover position.
  std::size_t pending_batches(std::size_t position) const;

 private:
  struct PendingBatch {
    std::uint32_t send_index;
    std::vector<std::uint32_t> events;
  };

  struct Channel {
    std::size_t slot = 0;                  // index into `next`
    std::vector<std::uint32_t> unassigned;  // local events whose entry is still infinite
    std::deque<PendingBatch> pending;       // ordered by send index
    std::set<std::uint32_t> unacknowledged;
    std::set<std::uint32_t> acknowledged;
    std::uint32_t last_recv_index = 0;
  };

  InlineStep record(const std::optional<VectorTimestamp>& incoming, const Rational& at);
  Channel& channel_for(ProcessId cover_member, Errc missing_code);

  ProcessId self_;
  CoverSet cover_;
  std::optional<std::size_t> own_position_;
  VectorClock clock_;
  std::vector<std::size_t> next_positions_;            // empty = full layout
  std::vector<std::optional<Channel>> channels_;       // by cover position
  std::vector<InlineTimestamp> history_;
  std::vector<Rational> times_;
};

}  // namespace causal
