#pragma once

#include "causal/scenario.hpp"

#include <cstdint>
#include <span>

namespace causal {

struct RandomScenarioOptions {
  std::size_t processes = 4;
  /// Upper bound on trace events; a send costs two (send and receive).
  std::size_t max_events = 30;
  double edge_probability = 0.4;
  double send_probability = 0.6;
  /// Application and control delays are drawn from {1/4, 2/4, ..., max_delay}.
  std::uint32_t max_delay = 6;
  /// Use star(n) instead of a random connected graph.
  bool star = false;
  CoverSpec cover;
  std::uint64_t seed = 0;
};

/// Seeded random scenario on a connected Erdős–Rényi graph (resampled until connected).
/// Scripted actions sit at distinct integer times; each message delay carries a unique
/// sub-grid offset, so no two events at one process ever coincide.
ScenarioScript random_scenario(const RandomScenarioOptions& options);

/// Star(n): every radial process sends one message to p0 at time 1, all before any
/// delivery; messages arrive in `delivery_order` (radial ids; empty = ascending) except
/// that `last_sender` always arrives last. Throws Error(BadProcess) for a central or
/// unknown `last_sender` or a bad order, Error(InvalidArgument) for n < 3.
ScenarioScript star_concurrent_scenario(std::size_t n, std::span<const ProcessId> delivery_order,
                                        ProcessId last_sender);

/// Largest hop diameter over the subgraphs obtained by deleting one process whose removal
/// keeps the rest connected.
std::size_t flooding_span(const CommunicationGraph& g);

/// Every process floods a message at time 0; each process forwards the first copy of
/// each flood to all other neighbors. Channels of `slow` take 2*fast_delay*D + fast_delay
/// (D = flooding_span), other channels at most fast_delay/2 plus tiny offsets that keep
/// event times distinct. Forwarding sends after `horizon` are dropped. Throws
/// Error(Disconnected), Error(BadProcess).
ScenarioScript flooding_scenario(const CommunicationGraph& g, ProcessId slow, const Rational& fast_delay,
                                 const Rational& horizon);

}  // namespace causal
