#include "causal/execution.hpp"

#include "causal/error.hpp"

#include <algorithm>
#include <string>

namespace causal {

namespace {

std::string describe(EventId id) {
  return "(p" + std::to_string(id.proc) + ", " + std::to_string(id.index) + ")";
}

}  // namespace

ExecutionTrace::ExecutionTrace(CommunicationGraph graph) : graph_(std::move(graph)), events_(graph_.size()) {}

void ExecutionTrace::append(Event e) {
  const auto p = e.id.proc;
  if (p >= events_.size()) throw Error(Errc::BadProcess, "event at unknown process " + std::to_string(p));
  auto& seq = events_[p];
  if (e.id.index != seq.size() + 1) {
    throw Error(Errc::IndexGap, "expected index " + std::to_string(seq.size() + 1) + " at p" + std::to_string(p) +
                                    ", got " + std::to_string(e.id.index));
  }
  if (!seq.empty() && e.at <= seq.back().at) {
    throw Error(Errc::TimeNotIncreasing, "event " + describe(e.id) + " at " + to_fraction_string(e.at));
  }
  if (e.at < 0) throw Error(Errc::TimeNotIncreasing, "negative time for " + describe(e.id));

  if (const auto* s = std::get_if<Send>(&e.kind)) {
    if (!graph_.has_edge(p, s->to)) {
      throw Error(Errc::NoChannel, "no edge (" + std::to_string(p) + "," + std::to_string(s->to) + ")");
    }
    if (messages_.contains(s->msg)) throw Error(Errc::DuplicateMessage, "message " + std::to_string(s->msg));
    messages_.emplace(s->msg, MessageRecord{e.id, s->to, std::nullopt});
  } else if (const auto* r = std::get_if<Receive>(&e.kind)) {
    auto it = messages_.find(r->msg);
    if (it == messages_.end()) throw Error(Errc::ReceiveWithoutSend, "message " + std::to_string(r->msg));
    auto& rec = it->second;
    if (rec.receive) throw Error(Errc::DuplicateReceive, "message " + std::to_string(r->msg));
    if (rec.to != p) throw Error(Errc::NoChannel, "message " + std::to_string(r->msg) + " addressed elsewhere");
    if (e.at <= event(rec.send).at) {
      throw Error(Errc::TimeNotIncreasing, "receive of message " + std::to_string(r->msg) + " not after its send");
    }
    rec.receive = e.id;
  }
  seq.push_back(std::move(e));
  ++total_;
}

bool ExecutionTrace::contains(EventId id) const {
  return id.proc < events_.size() && id.index >= 1 && id.index <= events_[id.proc].size();
}

const Event& ExecutionTrace::event(EventId id) const {
  if (!contains(id)) throw Error(Errc::UnknownEvent, describe(id));
  return events_[id.proc][id.index - 1];
}

std::vector<EventId> ExecutionTrace::time_order() const {
  std::vector<EventId> order;
  order.reserve(total_);
  for (const auto& seq : events_)
    for (const auto& e : seq) order.push_back(e.id);
  std::stable_sort(order.begin(), order.end(), [this](EventId a, EventId b) {
    const auto c = cmp(event(a).at, event(b).at);
    return c != 0 ? c < 0 : a.proc < b.proc;
  });
  return order;
}

bool operator==(const ExecutionTrace& a, const ExecutionTrace& b) {
  if (a.graph_ != b.graph_ || a.total_ != b.total_ || a.events_.size() != b.events_.size()) return false;
  for (std::size_t p = 0; p < a.events_.size(); ++p) {
    const auto& x = a.events_[p];
    const auto& y = b.events_[p];
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i].at != y[i].at || x[i].kind.index() != y[i].kind.index()) return false;
      if (const auto* s = std::get_if<Send>(&x[i].kind)) {
        const auto& t = std::get<Send>(y[i].kind);
        if (s->to != t.to || s->msg != t.msg) return false;
      } else if (const auto* r = std::get_if<Receive>(&x[i].kind)) {
        if (r->msg != std::get<Receive>(y[i].kind).msg) return false;
      }
    }
  }
  return true;
}

CausalityOracle::CausalityOracle(const ExecutionTrace& trace, Strategy strategy) : trace_(&trace) {
  const auto n = trace.process_count();
  offset_.resize(n + 1, 0);
  for (std::size_t p = 0; p < n; ++p) offset_[p + 1] = offset_[p] + trace.events(static_cast<ProcessId>(p)).size();
  const auto total = offset_[n];
  successors_.resize(total);
  time_.resize(total);
  for (ProcessId p = 0; p < n; ++p) {
    const auto& seq = trace.events(p);
    for (std::size_t i = 0; i < seq.size(); ++i) {
      const auto id = offset_[p] + i;
      time_[id] = seq[i].at;
      if (i + 1 < seq.size()) successors_[id].push_back(id + 1);
    }
  }
  for (const auto& [msg, rec] : trace.messages()) {
    if (rec.receive) successors_[dense(rec.send)].push_back(dense(*rec.receive));
  }

  strategy_ = strategy;
  if (strategy_ == Strategy::automatic) strategy_ = total <= kClosureLimit ? Strategy::closure : Strategy::search;
  if (strategy_ == Strategy::closure) {
    reach_.assign(total, boost::dynamic_bitset<>(total));
    const auto order = trace.time_order();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const auto id = dense(*it);
      for (auto s : successors_[id]) {
        reach_[id].set(s);
        reach_[id] |= reach_[s];
      }
    }
  }
}

std::size_t CausalityOracle::dense(EventId id) const {
  if (!trace_->contains(id)) throw Error(Errc::UnknownEvent, describe(id));
  return offset_[id.proc] + id.index - 1;
}

bool CausalityOracle::search(std::size_t from, std::size_t to) const {
  // Anything later than the target in real time cannot lie on a path to it.
  std::vector<bool> seen(successors_.size(), false);
  std::vector<std::size_t> stack{from};
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (auto s : successors_[v]) {
      if (s == to) return true;
      if (seen[s] || time_[s] > time_[to]) continue;
      seen[s] = true;
      stack.push_back(s);
    }
  }
  return false;
}

bool CausalityOracle::happened_before(EventId e, EventId f) const {
  const auto a = dense(e);
  const auto b = dense(f);
  if (a == b) return false;
  if (strategy_ == Strategy::closure) return reach_[a].test(b);
  return search(a, b);
}

bool CausalityOracle::concurrent(EventId e, EventId f) const {
  return e != f && !happened_before(e, f) && !happened_before(f, e);
}

bool happened_before(const ExecutionTrace& t, EventId e, EventId f) {
  return CausalityOracle(t, CausalityOracle::Strategy::search).happened_before(e, f);
}

bool concurrent(const ExecutionTrace& t, EventId e, EventId f) {
  return CausalityOracle(t, CausalityOracle::Strategy::search).concurrent(e, f);
}

std::optional<EventId> outbound(const ExecutionTrace& t, ProcessId j, EventId e, const Rational& at_time) {
  const auto& start = t.event(e);
  if (at_time < start.at) throw Error(Errc::QueryBeforeEvent, describe(e) + " queried before it occurred");
  const auto& seq = t.events(e.proc);
  for (std::size_t i = e.index - 1; i < seq.size() && seq[i].at <= at_time; ++i) {
    if (const auto* s = std::get_if<Send>(&seq[i].kind); s && s->to == j) return seq[i].id;
  }
  return std::nullopt;
}

std::optional<EventId> inbound(const ExecutionTrace& t, ProcessId j, EventId e, const Rational& at_time) {
  const auto out = outbound(t, j, e, at_time);
  if (!out) return std::nullopt;
  const auto& send = std::get<Send>(t.event(*out).kind);
  const auto& rec = t.messages().at(send.msg);
  if (!rec.receive || t.event(*rec.receive).at > at_time) return std::nullopt;
  return rec.receive;
}

}  // namespace causal
