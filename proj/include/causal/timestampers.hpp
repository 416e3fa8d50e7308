#pragma once

#include "causal/graph.hpp"
#include "causal/star_clock.hpp"
#include "causal/vector_clock.hpp"

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace causal {

enum class StampKind { compute, send, receive };

struct Stamp {
  VectorTimestamp timestamp;
  std::optional<VectorTimestamp> piggyback;  // attached to the outgoing message on sends
};

/// An online algorithm: each event's vector timestamp is final when the event occurs.
/// The simulator and the lower-bound adversary drive built-ins and user candidates
/// through this interface alike.
class OnlineTimestamper {
 public:
  virtual ~OnlineTimestamper() = default;

  virtual std::string name() const = 0;
  /// Timestamp length in a system of `n` processes.
  virtual std::size_t length(std::size_t n) const = 0;
  /// Drops all per-process state and prepares for a new execution on `graph`.
  virtual void reset(const CommunicationGraph& graph) = 0;
  /// `peer` is the destination of a send or the source of a receive; `piggyback` is set
  /// exactly for receives.
  virtual Stamp on_event(ProcessId proc, StampKind kind, ProcessId peer,
                         const std::optional<VectorTimestamp>& piggyback) = 0;
};

/// Classical vector clock over all n processes.
class VectorClockStamper final : public OnlineTimestamper {
 public:
  std::string name() const override { return "vclock"; }
  std::size_t length(std::size_t n) const override { return n; }
  void reset(const CommunicationGraph& graph) override;
  Stamp on_event(ProcessId proc, StampKind kind, ProcessId peer,
                 const std::optional<VectorTimestamp>& piggyback) override;

 private:
  std::vector<VectorClock> clocks_;
};

/// Length n-1 star clock; reset() throws Error(NotStarTopology) on other graphs.
class StarStamper final : public OnlineTimestamper {
 public:
  std::string name() const override { return "star"; }
  std::size_t length(std::size_t n) const override { return n - 1; }
  void reset(const CommunicationGraph& graph) override;
  Stamp on_event(ProcessId proc, StampKind kind, ProcessId peer,
                 const std::optional<VectorTimestamp>& piggyback) override;

 private:
  std::vector<StarClock> clocks_;
};

/// Full vector clock internally; emits only the first `keep` coordinates.
class TruncatedVectorClock final : public OnlineTimestamper {
 public:
  explicit TruncatedVectorClock(std::size_t keep) : keep_(keep) {}
  std::string name() const override { return "truncated-vclock:" + std::to_string(keep_); }
  std::size_t length(std::size_t) const override { return keep_; }
  void reset(const CommunicationGraph& graph) override;
  Stamp on_event(ProcessId proc, StampKind kind, ProcessId peer,
                 const std::optional<VectorTimestamp>& piggyback) override;

 private:
  std::size_t keep_;
  VectorClockStamper full_;
};

/// Lamport clock as a length-1 vector.
class LamportScalar final : public OnlineTimestamper {
 public:
  std::string name() const override { return "lamport-scalar"; }
  std::size_t length(std::size_t) const override { return 1; }
  void reset(const CommunicationGraph& graph) override;
  Stamp on_event(ProcessId proc, StampKind kind, ProcessId peer,
                 const std::optional<VectorTimestamp>& piggyback) override;

 private:
  std::vector<Rational> counters_;
};

/// Stamps every event with the length-1 zero vector.
class ConstantZero final : public OnlineTimestamper {
 public:
  std::string name() const override { return "zero"; }
  std::size_t length(std::size_t) const override { return 1; }
  void reset(const CommunicationGraph&) override {}
  Stamp on_event(ProcessId, StampKind kind, ProcessId, const std::optional<VectorTimestamp>&) override;
};

/// Parses "vclock", "star", "truncated-vclock:<s>", "lamport-scalar", "zero".
/// Throws Error(InvalidArgument).
std::unique_ptr<OnlineTimestamper> make_timestamper(std::string_view spec);

}  // namespace causal
