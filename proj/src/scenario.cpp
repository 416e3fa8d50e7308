#include "causal/scenario.hpp"

#include "causal/error.hpp"

#include <string>

namespace causal {

const Rational& ControlDelays::between(ProcessId from, ProcessId to) const {
  if (auto it = per_pair.find({from, to}); it != per_pair.end()) return it->second;
  return fallback;
}

CommunicationGraph build_graph(const ScenarioScript& script) {
  try {
    return CommunicationGraph(script.processes, script.edges);
  } catch (const Error& e) {
    throw Error(Errc::ScriptInvalid, e.what());
  }
}

void validate(const ScenarioScript& script) {
  const auto graph = build_graph(script);
  const auto n = script.processes;
  auto fail = [](const std::string& what) { throw Error(Errc::ScriptInvalid, what); };

  std::vector<const Rational*> last(n, nullptr);
  for (std::size_t i = 0; i < script.actions.size(); ++i) {
    const auto& a = script.actions[i];
    const auto where = "action " + std::to_string(i);
    if (a.proc >= n) fail(where + ": process " + std::to_string(a.proc) + " out of range");
    if (a.at < 0) fail(where + ": negative time");
    if (last[a.proc] && a.at <= *last[a.proc]) fail(where + ": times at p" + std::to_string(a.proc) + " not increasing");
    last[a.proc] = &a.at;
    if (const auto* s = std::get_if<SendAction>(&a.kind)) {
      if (!graph.has_edge(a.proc, s->to)) {
        fail(where + ": no channel p" + std::to_string(a.proc) + " -> p" + std::to_string(s->to));
      }
      if (s->delay <= 0) fail(where + ": delay must be positive");
    }
  }
  if (script.control_delay.fallback <= 0) fail("control delay must be positive");
  for (const auto& [pair, d] : script.control_delay.per_pair) {
    if (d <= 0) fail("control delay must be positive");
    if (pair.first >= n || pair.second >= n) fail("control delay for unknown process");
  }
  for (const auto& q : script.queries) {
    if (q.proc >= n || q.index == 0 || q.at < 0) fail("malformed query");
  }
}

CoverSet resolve_cover(const CoverSpec& spec, const CommunicationGraph& graph) {
  switch (spec.mode) {
    case CoverSpec::Mode::given: return given_cover(graph, spec.members);
    case CoverSpec::Mode::exact: return vertex_cover(graph, CoverMode::exact);
    case CoverSpec::Mode::greedy: return vertex_cover(graph, CoverMode::greedy);
  }
  return {};
}

}  // namespace causal
