#pragma once

#include "causal/execution.hpp"
#include "causal/inline_clock.hpp"
#include "causal/scenario.hpp"
#include "causal/timestampers.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace causal {

enum class Algorithm { vclock, inline_ts, star };

std::string_view to_string(Algorithm algo) noexcept;
/// "vclock" | "inline" | "star"; throws Error(InvalidArgument).
Algorithm parse_algorithm(std::string_view text);

using AnyTimestamp = std::variant<VectorTimestamp, InlineTimestamp>;

struct TimestampRecord {
  EventId event;
  Rational at;
  AnyTimestamp timestamp;  // as assigned when the event occurred
};

struct ControlRecord {
  ControlMessage message;
  Rational sent_at;
  Rational delivered_at;
};

struct QueryRecord {
  enum class Status { ready, blocked, error };

  QuerySpec query;
  Status status = Status::error;
  /// Ready: the answer at query time. Blocked: the answer once the query unblocked.
  std::optional<AnyTimestamp> answer;
  std::vector<std::size_t> missing;  // cover positions pending at query time
  std::optional<Rational> unblocked_at;
  std::string error;  // Errc name for Status::error
};

struct RunResult {
  std::string scenario_id;
  std::string algorithm;
  std::optional<CoverSet> cover;  // inline only
  ExecutionTrace trace;
  std::vector<TimestampRecord> timestamps;
  std::vector<QueryRecord> queries;
  std::vector<ControlRecord> controls;
};

using QueryAnswer = std::variant<AnyTimestamp, Blocked>;

/// Deterministic discrete-event simulation of one scenario under one algorithm.
///
/// Items pending at the same rational time run in (kind, process, sequence) order:
/// control deliveries, then application deliveries by (receiver, message id), then
/// scripted actions. Control channels are FIFO per (from, to) pair; application
/// channels deliver after exactly the scripted delay, so they need not be FIFO.
class Simulation {
 public:
  /// Throws ScriptInvalid, AlgorithmTopologyMismatch, InvalidCover, TooLargeForExact.
  Simulation(const ScenarioScript& script, Algorithm algo);
  /// Drives a caller-supplied online algorithm instead of a built-in one.
  Simulation(const ScenarioScript& script, std::unique_ptr<OnlineTimestamper> candidate);

  bool done() const noexcept { return queue_.empty(); }
  /// Runs every item at the earliest pending time and returns that time.
  /// Throws ScriptInvalid when the script produces an invalid execution.
  Rational step();
  const Rational& now() const noexcept { return now_; }

  const ExecutionTrace& trace() const noexcept { return trace_; }
  const CommunicationGraph& graph() const noexcept { return trace_.graph(); }
  bool is_inline() const noexcept { return !stamper_; }
  const std::string& algorithm_name() const noexcept { return algo_name_; }
  const std::optional<CoverSet>& cover() const noexcept { return cover_; }
  const InlineProcess& inline_process(ProcessId p) const { return inline_.at(p); }

  /// Q^now(e) against the current state. Throws UnknownEvent for events not yet occurred.
  QueryAnswer query(EventId e) const;

  /// Answers outstanding queries and hands over the results.
  RunResult finish() &&;

 private:
  enum class ItemKind { control = 0, delivery = 1, action = 2 };
  struct Item {
    Rational time;
    ItemKind kind;
    ProcessId proc;
    std::uint64_t seq;
  };
  struct Later {
    bool operator()(const Item& a, const Item& b) const;
  };
  struct PendingControl {
    ControlMessage message;
    Rational sent_at;
  };

  Simulation(const ScenarioScript& script, std::string algo_name, std::unique_ptr<OnlineTimestamper>&& stamper);

  void run_action(const Action& a);
  void deliver(MessageId msg);
  void deliver_control(std::uint64_t id);
  void emit_control(const ControlMessage& cm);
  void append(Event e);
  void answer_queries_before(const std::optional<Rational>& bound);
  void refresh_blocked();
  QueryRecord answer(const QuerySpec& q) const;
  void record_online(const Stamp& stamp, EventId id, const Rational& at, std::optional<MessageId> msg);

  std::string scenario_id_;
  std::string algo_name_;
  std::vector<Action> actions_;
  ControlDelays control_delay_;
  std::optional<CoverSet> cover_;
  ExecutionTrace trace_;
  Rational now_{0};

  std::priority_queue<Item, std::vector<Item>, Later> queue_;
  MessageId next_msg_ = 0;
  std::map<MessageId, std::pair<ProcessId, ProcessId>> endpoints_;  // (from, to)

  std::unique_ptr<OnlineTimestamper> stamper_;
  std::map<EventId, VectorTimestamp> online_ts_;
  std::map<MessageId, VectorTimestamp> online_piggyback_;

  std::vector<InlineProcess> inline_;
  std::map<MessageId, InlinePiggyback> inline_piggyback_;
  std::vector<PendingControl> controls_;
  std::map<std::pair<ProcessId, ProcessId>, Rational> control_tail_;
  std::vector<ControlRecord> control_log_;

  std::vector<TimestampRecord> timestamps_;
  std::vector<QuerySpec> sorted_queries_;
  std::size_t next_query_ = 0;
  std::vector<QueryRecord> query_log_;
};

using StepObserver = std::function<void(const Simulation&)>;

/// Runs a scenario to quiescence. `on_step` is invoked after every step.
RunResult run(const ScenarioScript& script, Algorithm algo, const StepObserver& on_step = {});
RunResult run(const ScenarioScript& script, std::unique_ptr<OnlineTimestamper> candidate,
              const StepObserver& on_step = {});

}  // namespace causal
