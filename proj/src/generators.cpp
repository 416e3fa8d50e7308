#include "causal/generators.hpp"

#include "causal/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <string>

namespace causal {

namespace {

std::vector<EdgeSpec> to_specs(const CommunicationGraph& g) {
  std::vector<EdgeSpec> out;
  for (const auto& e : g.edges()) out.emplace_back(e.a, e.b);
  return out;
}

CommunicationGraph random_connected_graph(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<EdgeSpec> edges;
    for (ProcessId i = 0; i < n; ++i)
      for (ProcessId j = i + 1; j < n; ++j)
        if (coin(rng)) edges.emplace_back(i, j);
    CommunicationGraph g(n, edges);
    if (n <= 1 || is_connected(g)) return g;
  }
  return CommunicationGraph::complete(n);
}

}  // namespace

ScenarioScript random_scenario(const RandomScenarioOptions& options) {
  std::mt19937_64 rng(options.seed);
  const auto n = options.processes;
  if (n == 0) throw Error(Errc::InvalidArgument, "need at least one process");
  if (options.star && n < 3) throw Error(Errc::InvalidArgument, "star scenarios need n >= 3");
  const auto graph = options.star ? CommunicationGraph::star(n) : random_connected_graph(n, options.edge_probability, rng);

  ScenarioScript s;
  s.id = "random-" + std::to_string(options.seed);
  s.processes = n;
  s.edges = to_specs(graph);
  s.cover = options.cover;
  s.seed = options.seed;

  const auto grid = static_cast<long>(options.max_delay) * 4;
  std::uniform_int_distribution<long> delay_steps(1, std::max(1L, grid));
  std::uniform_int_distribution<ProcessId> pick_proc(0, static_cast<ProcessId>(n - 1));
  std::bernoulli_distribution want_send(options.send_probability);

  std::size_t events = 0;
  long time = 0;
  std::uint32_t sends = 0;
  while (events < options.max_events) {
    const auto p = pick_proc(rng);
    const auto& nbrs = graph.neighbors(p);
    ++time;
    if (!nbrs.empty() && events + 2 <= options.max_events && want_send(rng)) {
      std::uniform_int_distribution<std::size_t> pick_nbr(0, nbrs.size() - 1);
      const auto to = nbrs[pick_nbr(rng)];
      ++sends;
      // The unique offset below one grid step keeps arrival times distinct and non-integral.
      const Rational delay = make_rational(delay_steps(rng), 4) + make_rational(sends, 4096);
      s.actions.push_back(Action{Rational(time), p, SendAction{to, delay}});
      events += 2;
    } else {
      s.actions.push_back(Action{Rational(time), p, ComputeAction{}});
      events += 1;
    }
  }

  s.control_delay.fallback = Rational(1);
  for (const auto& e : graph.edges()) {
    s.control_delay.per_pair[{e.a, e.b}] = make_rational(delay_steps(rng), 4);
    s.control_delay.per_pair[{e.b, e.a}] = make_rational(delay_steps(rng), 4);
  }
  return s;
}

ScenarioScript star_concurrent_scenario(std::size_t n, std::span<const ProcessId> delivery_order, ProcessId last_sender) {
  if (n < 3) throw Error(Errc::InvalidArgument, "star scenarios need n >= 3");
  if (last_sender == 0 || last_sender >= n) {
    throw Error(Errc::BadProcess, "last sender must be a radial process, got p" + std::to_string(last_sender));
  }
  std::vector<ProcessId> order(delivery_order.begin(), delivery_order.end());
  if (order.empty()) {
    for (ProcessId p = 1; p < n; ++p) order.push_back(p);
  }
  auto sorted = order;
  std::sort(sorted.begin(), sorted.end());
  std::vector<ProcessId> radials(n - 1);
  std::iota(radials.begin(), radials.end(), ProcessId{1});
  if (sorted != radials) throw Error(Errc::BadProcess, "delivery order is not a permutation of the radials");
  std::erase(order, last_sender);
  order.push_back(last_sender);

  ScenarioScript s;
  s.id = "star-concurrent-n" + std::to_string(n) + "-last-p" + std::to_string(last_sender);
  s.processes = n;
  s.edges = to_specs(CommunicationGraph::star(n));
  s.cover.mode = CoverSpec::Mode::exact;
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    s.actions.push_back(Action{Rational(1), order[pos], SendAction{0, Rational(static_cast<long>(pos) + 1)}});
  }
  std::sort(s.actions.begin(), s.actions.end(), [](const Action& a, const Action& b) { return a.proc < b.proc; });
  return s;
}

std::size_t flooding_span(const CommunicationGraph& g) {
  std::size_t best = 0;
  for (ProcessId v = 0; v < g.size(); ++v) {
    const ProcessId removed[] = {v};
    if (auto d = diameter(g, removed)) best = std::max(best, *d);
  }
  return best;
}

namespace {

// Per-process registry of used event times; `claim` moves a wanted time forward to a free slot.
class TimeSlots {
 public:
  TimeSlots(std::size_t n, Rational bump) : used_(n), bump_(std::move(bump)) {}

  Rational claim(ProcessId p, Rational t) {
    while (used_[p].contains(t)) t += bump_;
    used_[p].insert(t);
    return t;
  }

 private:
  std::vector<std::set<Rational>> used_;
  Rational bump_;
};

struct Arrival {
  Rational time;
  ProcessId to;
  ProcessId from;
  ProcessId origin;
};

struct ArrivalLater {
  bool operator()(const Arrival& a, const Arrival& b) const {
    if (a.time != b.time) return a.time > b.time;
    return std::tie(a.to, a.from, a.origin) > std::tie(b.to, b.from, b.origin);
  }
};

}  // namespace

ScenarioScript flooding_scenario(const CommunicationGraph& g, ProcessId slow, const Rational& fast_delay,
                                 const Rational& horizon) {
  const auto n = g.size();
  if (slow >= n) throw Error(Errc::BadProcess, "slow process p" + std::to_string(slow));
  if (fast_delay <= 0) throw Error(Errc::InvalidArgument, "fast delay must be positive");
  if (n < 2 || !is_connected(g)) throw Error(Errc::Disconnected, "flooding needs a connected graph");

  const Rational span(static_cast<long>(flooding_span(g)));
  const Rational slow_delay = 2 * fast_delay * span + fast_delay;
  const Rational fast = fast_delay / 2;
  const Rational step = fast_delay / static_cast<long>(16 * n * n);
  TimeSlots slots(n, step / 64);

  ScenarioScript s;
  s.id = "flooding-n" + std::to_string(n) + "-slow-p" + std::to_string(slow);
  s.processes = n;
  s.edges = to_specs(g);
  s.cover.mode = CoverSpec::Mode::exact;
  s.control_delay.fallback = fast_delay / 4;

  std::priority_queue<Arrival, std::vector<Arrival>, ArrivalLater> arrivals;
  auto send = [&](ProcessId from, ProcessId to, const Rational& at, ProcessId origin) {
    const Rational base = (from == slow || to == slow) ? slow_delay : fast;
    const Rational arrive = slots.claim(to, at + base);
    s.actions.push_back(Action{at, from, SendAction{to, arrive - at}});
    arrivals.push(Arrival{arrive, to, from, origin});
  };

  for (ProcessId p = 0; p < n; ++p) {
    Rational t(0);
    for (auto q : g.neighbors(p)) {
      send(p, q, slots.claim(p, t), p);
      t += step;
    }
  }

  std::vector<std::set<ProcessId>> seen(n);
  for (ProcessId p = 0; p < n; ++p) seen[p].insert(p);
  while (!arrivals.empty()) {
    const auto a = arrivals.top();
    arrivals.pop();
    if (!seen[a.to].insert(a.origin).second) continue;
    Rational t = a.time;
    for (auto q : g.neighbors(a.to)) {
      if (q == a.from) continue;
      t = slots.claim(a.to, t + step);
      if (t > horizon) break;
      send(a.to, q, t, a.origin);
    }
  }

  std::stable_sort(s.actions.begin(), s.actions.end(), [](const Action& a, const Action& b) { return a.at < b.at; });
  return s;
}

}  // namespace causal
