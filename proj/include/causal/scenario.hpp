#pragma once

#include "causal/graph.hpp"
#include "causal/rational.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace causal {

struct ComputeAction {};
struct SendAction {
  ProcessId to = 0;
  Rational delay;
};

/// A scripted local event. Receives are not scripted: they happen when messages arrive.
struct Action {
  Rational at;
  ProcessId proc = 0;
  std::variant<ComputeAction, SendAction> kind;
};

struct QuerySpec {
  ProcessId proc = 0;
  std::uint32_t index = 1;
  Rational at;
};

struct CoverSpec {
  enum class Mode { given, exact, greedy };
  Mode mode = Mode::exact;
  std::vector<ProcessId> members;  // for Mode::given
};

/// Control-channel delays: a default plus per (from, to) overrides.
struct ControlDelays {
  Rational fallback{1};
  std::map<std::pair<ProcessId, ProcessId>, Rational> per_pair;

  const Rational& between(ProcessId from, ProcessId to) const;
};

struct ScenarioScript {
  std::string id;
  std::size_t processes = 0;
  std::vector<EdgeSpec> edges;
  CoverSpec cover;
  std::vector<Action> actions;
  ControlDelays control_delay;
  std::vector<QuerySpec> queries;
  std::uint64_t seed = 0;
  bool neighbor_restricted = false;
};

/// Throws Error(ScriptInvalid) describing the first problem found: bad graph, send on a
/// missing edge, non-positive delay, action times not strictly increasing per process,
/// out-of-range process ids.
void validate(const ScenarioScript& script);

/// Throws Error(ScriptInvalid) for malformed graphs.
CommunicationGraph build_graph(const ScenarioScript& script);

/// Throws Error(InvalidCover) if a given cover misses an edge, Error(TooLargeForExact) as
/// vertex_cover does.
CoverSet resolve_cover(const CoverSpec& spec, const CommunicationGraph& graph);

}  // namespace causal
