#pragma once

#include "causal/graph.hpp"
#include "causal/rational.hpp"

#include <boost/dynamic_bitset.hpp>

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <variant>
#include <vector>

namespace causal {

using MessageId = std::uint32_t;

/// (process, 1-based index). An absent event (index = infinity) is `std::nullopt`, never a large index.
struct EventId {
  ProcessId proc = 0;
  std::uint32_t index = 1;

  friend bool operator==(const EventId&, const EventId&) = default;
  friend auto operator<=>(const EventId&, const EventId&) = default;
};

struct Send {
  ProcessId to;
  MessageId msg;
};
struct Receive {
  MessageId msg;
};
struct Compute {};

using EventKind = std::variant<Send, Receive, Compute>;

struct Event {
  EventId id;
  EventKind kind;
  Rational at;

  bool is_send() const { return std::holds_alternative<Send>(kind); }
  bool is_receive() const { return std::holds_alternative<Receive>(kind); }
};

struct MessageRecord {
  EventId send;
  ProcessId to;
  std::optional<EventId> receive;
};

/// A finite execution: per-process event sequences plus the message table.
class ExecutionTrace {
 public:
  ExecutionTrace() = default;
  explicit ExecutionTrace(CommunicationGraph graph);

  /// Throws IndexGap, TimeNotIncreasing, ReceiveWithoutSend, DuplicateReceive,
  /// DuplicateMessage, NoChannel, BadProcess.
  void append(Event e);

  const CommunicationGraph& graph() const noexcept { return graph_; }
  std::size_t process_count() const noexcept { return events_.size(); }
  const std::vector<Event>& events(ProcessId p) const { return events_.at(p); }
  std::size_t total_events() const noexcept { return total_; }
  bool contains(EventId id) const;
  /// Throws Error(UnknownEvent).
  const Event& event(EventId id) const;
  const std::map<MessageId, MessageRecord>& messages() const noexcept { return messages_; }

  /// All events ordered by (time, process); a topological order of happened-before.
  std::vector<EventId> time_order() const;

  friend bool operator==(const ExecutionTrace&, const ExecutionTrace&);

 private:
  CommunicationGraph graph_;
  std::vector<std::vector<Event>> events_;
  std::map<MessageId, MessageRecord> messages_;
  std::size_t total_ = 0;
};

/// Brute-force happened-before oracle: reachability in the event DAG whose edges are
/// consecutive same-process events and send -> receive.
class CausalityOracle {
 public:
  enum class Strategy { automatic, closure, search };

  /// Above this many events `automatic` switches from the closure matrix to per-query search.
  static constexpr std::size_t kClosureLimit = 2000;

  explicit CausalityOracle(const ExecutionTrace& trace, Strategy strategy = Strategy::automatic);

  /// Throws Error(UnknownEvent).
  bool happened_before(EventId e, EventId f) const;
  bool concurrent(EventId e, EventId f) const;
  Strategy strategy() const noexcept { return strategy_; }

 private:
  std::size_t dense(EventId id) const;
  bool search(std::size_t from, std::size_t to) const;

  const ExecutionTrace* trace_;
  Strategy strategy_;
  std::vector<std::size_t> offset_;  // dense id of (p, 1)
  std::vector<std::vector<std::size_t>> successors_;
  std::vector<Rational> time_;
  std::vector<boost::dynamic_bitset<>> reach_;
};

bool happened_before(const ExecutionTrace& t, EventId e, EventId f);
bool concurrent(const ExecutionTrace& t, EventId e, EventId f);

/// First send to `j` at proc(e) with index >= index(e) occurring by `at_time`.
/// Throws UnknownEvent, QueryBeforeEvent (at_time < e's time).
std::optional<EventId> outbound(const ExecutionTrace& t, ProcessId j, EventId e, const Rational& at_time);

/// Receive event of outbound(j, e) if it has occurred by `at_time`.
std::optional<EventId> inbound(const ExecutionTrace& t, ProcessId j, EventId e, const Rational& at_time);

}  // namespace causal
