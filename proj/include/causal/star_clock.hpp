#pragma once

#include "causal/graph.hpp"
#include "causal/vector_clock.hpp"

#include <optional>
#include <variant>

namespace causal {

// Online length-(n-1) real-valued vector timestamps for star graphs (n >= 3). Radial
// processes own one integer-valued slot each; the central process moves every slot
// strictly inside the open interval to the next integer, so its values are never
// integral. Central updates pick the midpoint, so denominators are powers of two that
// grow by one bit per central event.

struct Central {};
struct Radial {
  std::size_t slot;  // 0-based slot of this radial process
};
using StarRole = std::variant<Central, Radial>;

/// Throws Error(BadLength) when `w` has fewer than 2 slots or a radial slot is out of range.
VectorTimestamp star_update(const StarRole& role, VectorTimestamp w);

struct StarStep {
  VectorTimestamp timestamp;
  std::optional<VectorTimestamp> piggyback;  // set for send events
};

class StarClock {
 public:
  /// Throws Error(NotStarTopology) if `graph` is not a star with n >= 3.
  StarClock(const CommunicationGraph& graph, ProcessId self);

  StarStep on_compute();
  /// Throws Error(NotStarTopology) for radial-to-radial or self sends.
  StarStep on_send(ProcessId to);
  /// Throws Error(BadLength) on a wrong-length piggyback, Error(NotStarTopology) on a bad peer.
  StarStep on_receive(ProcessId from, const VectorTimestamp& piggyback);

  const VectorTimestamp& state() const noexcept { return state_; }
  const StarRole& role() const noexcept { return role_; }

 private:
  void check_peer(ProcessId peer) const;
  VectorTimestamp advance();

  ProcessId self_;
  ProcessId center_;
  StarRole role_;
  VectorTimestamp state_;
};

/// Slot owned by radial process `p` in a star with the given center.
std::size_t star_slot(ProcessId center, ProcessId p);

}  // namespace causal
