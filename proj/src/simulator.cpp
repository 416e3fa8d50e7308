#include "causal/simulator.hpp"

#include "causal/error.hpp"

#include <algorithm>

namespace causal {

std::string_view to_string(Algorithm algo) noexcept {
  switch (algo) {
    case Algorithm::vclock: return "vclock";
    case Algorithm::inline_ts: return "inline";
    case Algorithm::star: return "star";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view text) {
  if (text == "vclock") return Algorithm::vclock;
  if (text == "inline") return Algorithm::inline_ts;
  if (text == "star") return Algorithm::star;
  throw Error(Errc::InvalidArgument, "unknown algorithm '" + std::string(text) + "'");
}

bool Simulation::Later::operator()(const Item& a, const Item& b) const {
  if (const int c = cmp(a.time, b.time); c != 0) return c > 0;
  if (a.kind != b.kind) return a.kind > b.kind;
  if (a.proc != b.proc) return a.proc > b.proc;
  return a.seq > b.seq;
}

namespace {

std::unique_ptr<OnlineTimestamper> builtin_stamper(const ScenarioScript& script, Algorithm algo) {
  switch (algo) {
    case Algorithm::inline_ts: return nullptr;
    case Algorithm::vclock: return std::make_unique<VectorClockStamper>();
    case Algorithm::star:
      if (!build_graph(script).star_center()) {
        throw Error(Errc::AlgorithmTopologyMismatch, "star algorithm needs a star graph with n >= 3");
      }
      return std::make_unique<StarStamper>();
  }
  return nullptr;
}

}  // namespace

Simulation::Simulation(const ScenarioScript& script, Algorithm algo)
    : Simulation(script, std::string(to_string(algo)), builtin_stamper(script, algo)) {}

namespace {

std::string candidate_name(const std::unique_ptr<OnlineTimestamper>& candidate) {
  if (!candidate) throw Error(Errc::InvalidArgument, "no candidate timestamper");
  return candidate->name();
}

}  // namespace

Simulation::Simulation(const ScenarioScript& script, std::unique_ptr<OnlineTimestamper> candidate)
    : Simulation(script, candidate_name(candidate), std::move(candidate)) {}

Simulation::Simulation(const ScenarioScript& script, std::string algo_name, std::unique_ptr<OnlineTimestamper>&& stamper)
    : scenario_id_(script.id),
      algo_name_(std::move(algo_name)),
      actions_(script.actions),
      control_delay_(script.control_delay),
      stamper_(std::move(stamper)) {
  validate(script);
  auto graph = build_graph(script);
  if (stamper_) {
    stamper_->reset(graph);
  } else {
    cover_ = resolve_cover(script.cover, graph);
    const InlineProcess::Options options{script.neighbor_restricted};
    for (ProcessId p = 0; p < graph.size(); ++p) inline_.emplace_back(p, *cover_, graph, options);
  }
  trace_ = ExecutionTrace(std::move(graph));

  for (std::size_t i = 0; i < actions_.size(); ++i) {
    queue_.push(Item{actions_[i].at, ItemKind::action, actions_[i].proc, i});
  }
  sorted_queries_ = script.queries;
  std::stable_sort(sorted_queries_.begin(), sorted_queries_.end(),
                   [](const QuerySpec& a, const QuerySpec& b) { return a.at < b.at; });
}

void Simulation::append(Event e) {
  try {
    trace_.append(std::move(e));
  } catch (const Error& err) {
    throw Error(Errc::ScriptInvalid, err.what());
  }
}

void Simulation::record_online(const Stamp& stamp, EventId id, const Rational& at, std::optional<MessageId> msg) {
  online_ts_.emplace(id, stamp.timestamp);
  timestamps_.push_back(TimestampRecord{id, at, stamp.timestamp});
  if (msg) online_piggyback_.emplace(*msg, stamp.piggyback.value_or(stamp.timestamp));
}

void Simulation::run_action(const Action& a) {
  const EventId id{a.proc, static_cast<std::uint32_t>(trace_.events(a.proc).size() + 1)};
  if (std::holds_alternative<ComputeAction>(a.kind)) {
    append(Event{id, Compute{}, a.at});
    if (stamper_) {
      record_online(stamper_->on_event(a.proc, StampKind::compute, a.proc, std::nullopt), id, a.at, std::nullopt);
    } else {
      auto step = inline_[a.proc].on_compute(a.at);
      timestamps_.push_back(TimestampRecord{id, a.at, std::move(step.timestamp)});
    }
    return;
  }

  const auto& send = std::get<SendAction>(a.kind);
  const MessageId msg = next_msg_++;
  append(Event{id, Send{send.to, msg}, a.at});
  endpoints_.emplace(msg, std::make_pair(a.proc, send.to));
  if (stamper_) {
    record_online(stamper_->on_event(a.proc, StampKind::send, send.to, std::nullopt), id, a.at, msg);
  } else {
    auto step = inline_[a.proc].on_send(send.to, a.at);
    inline_piggyback_.emplace(msg, std::move(*step.piggyback));
    timestamps_.push_back(TimestampRecord{id, a.at, std::move(step.timestamp)});
  }
  queue_.push(Item{a.at + send.delay, ItemKind::delivery, send.to, msg});
}

void Simulation::deliver(MessageId msg) {
  const auto [from, to] = endpoints_.at(msg);
  const EventId id{to, static_cast<std::uint32_t>(trace_.events(to).size() + 1)};
  append(Event{id, Receive{msg}, now_});
  if (stamper_) {
    auto stamp = stamper_->on_event(to, StampKind::receive, from, online_piggyback_.at(msg));
    record_online(stamp, id, now_, std::nullopt);
    return;
  }
  auto step = inline_[to].on_receive(from, inline_piggyback_.at(msg), now_);
  timestamps_.push_back(TimestampRecord{id, now_, std::move(step.timestamp)});
  if (step.control) emit_control(*step.control);
}

void Simulation::emit_control(const ControlMessage& cm) {
  const auto pair = std::make_pair(cm.from, cm.to);
  Rational when = now_ + control_delay_.between(cm.from, cm.to);
  if (auto it = control_tail_.find(pair); it != control_tail_.end() && it->second > when) when = it->second;
  control_tail_[pair] = when;
  controls_.push_back(PendingControl{cm, now_});
  queue_.push(Item{when, ItemKind::control, cm.to, controls_.size() - 1});
}

void Simulation::deliver_control(std::uint64_t id) {
  const auto& pc = controls_.at(id);
  inline_.at(pc.message.to).on_control(pc.message);
  control_log_.push_back(ControlRecord{pc.message, pc.sent_at, now_});
}

Rational Simulation::step() {
  if (queue_.empty()) throw Error(Errc::InvalidArgument, "simulation already quiescent");
  const Rational t = queue_.top().time;
  answer_queries_before(t);
  now_ = t;
  while (!queue_.empty() && queue_.top().time == t) {
    const Item item = queue_.top();
    queue_.pop();
    switch (item.kind) {
      case ItemKind::action: run_action(actions_[item.seq]); break;
      case ItemKind::delivery: deliver(static_cast<MessageId>(item.seq)); break;
      case ItemKind::control: deliver_control(item.seq); break;
    }
  }
  refresh_blocked();
  return t;
}

QueryAnswer Simulation::query(EventId e) const {
  if (!trace_.contains(e)) throw Error(Errc::UnknownEvent, "event has not occurred");
  if (stamper_) return AnyTimestamp{online_ts_.at(e)};
  auto result = inline_.at(e.proc).query(e.index, now_);
  if (auto* ready = std::get_if<Ready>(&result)) return AnyTimestamp{std::move(ready->timestamp)};
  return std::get<Blocked>(std::move(result));
}

QueryRecord Simulation::answer(const QuerySpec& q) const {
  QueryRecord rec;
  rec.query = q;
  const EventId id{q.proc, q.index};
  if (!trace_.contains(id)) {
    rec.status = QueryRecord::Status::error;  // classified in finish()
    return rec;
  }
  auto a = query(id);
  if (auto* ts = std::get_if<AnyTimestamp>(&a)) {
    rec.status = QueryRecord::Status::ready;
    rec.answer = std::move(*ts);
  } else {
    rec.status = QueryRecord::Status::blocked;
    rec.missing = std::get<Blocked>(a).missing;
  }
  return rec;
}

void Simulation::answer_queries_before(const std::optional<Rational>& bound) {
  while (next_query_ < sorted_queries_.size() && (!bound || sorted_queries_[next_query_].at < *bound)) {
    query_log_.push_back(answer(sorted_queries_[next_query_]));
    ++next_query_;
  }
}

void Simulation::refresh_blocked() {
  for (auto& rec : query_log_) {
    if (rec.status != QueryRecord::Status::blocked || rec.unblocked_at) continue;
    auto a = query(EventId{rec.query.proc, rec.query.index});
    if (auto* ts = std::get_if<AnyTimestamp>(&a)) {
      rec.answer = std::move(*ts);
      rec.unblocked_at = now_;
    }
  }
}

RunResult Simulation::finish() && {
  answer_queries_before(std::nullopt);
  for (auto& rec : query_log_) {
    if (rec.status != QueryRecord::Status::error || !rec.error.empty()) continue;
    rec.error = std::string(to_string(trace_.contains(EventId{rec.query.proc, rec.query.index})
                                          ? Errc::QueryBeforeEvent
                                          : Errc::UnknownEvent));
  }
  RunResult out;
  out.scenario_id = scenario_id_;
  out.algorithm = algo_name_;
  out.cover = cover_;
  out.trace = std::move(trace_);
  out.timestamps = std::move(timestamps_);
  out.queries = std::move(query_log_);
  out.controls = std::move(control_log_);
  return out;
}

namespace {

RunResult drive(Simulation sim, const StepObserver& on_step) {
  while (!sim.done()) {
    sim.step();
    if (on_step) on_step(sim);
  }
  return std::move(sim).finish();
}

}  // namespace

RunResult run(const ScenarioScript& script, Algorithm algo, const StepObserver& on_step) {
  return drive(Simulation(script, algo), on_step);
}

RunResult run(const ScenarioScript& script, std::unique_ptr<OnlineTimestamper> candidate, const StepObserver& on_step) {
  return drive(Simulation(script, std::move(candidate)), on_step);
}

}  // namespace causal
