#pragma once

#include "causal/execution.hpp"
#include "causal/rational.hpp"

#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace causal {

/// Fixed-length vector of non-negative exact rationals.
class VectorTimestamp {
 public:
  VectorTimestamp() = default;
  explicit VectorTimestamp(std::size_t length) : elems_(length, Rational(0)) {}
  explicit VectorTimestamp(std::vector<Rational> elems) : elems_(std::move(elems)) {}
  VectorTimestamp(std::initializer_list<Rational> elems) : elems_(elems) {}

  std::size_t size() const noexcept { return elems_.size(); }
  const Rational& operator[](std::size_t i) const { return elems_[i]; }
  Rational& operator[](std::size_t i) { return elems_[i]; }
  const std::vector<Rational>& elems() const noexcept { return elems_; }

  friend bool operator==(const VectorTimestamp&, const VectorTimestamp&) = default;

 private:
  std::vector<Rational> elems_;
};

/// u < v: every element <=, at least one strictly less. Throws Error(LengthMismatch).
bool vc_less(const VectorTimestamp& u, const VectorTimestamp& v);

/// Element-wise u <= v. Throws Error(LengthMismatch).
bool vc_leq(const VectorTimestamp& u, const VectorTimestamp& v);

VectorTimestamp vc_max(const VectorTimestamp& u, const VectorTimestamp& v);

/// One classical step: element-wise max with `incoming` (if any), then increment `self`.
VectorTimestamp vc_step(const VectorTimestamp& state, std::size_t self,
                        const std::optional<VectorTimestamp>& incoming = std::nullopt);

/// Per-process vector clock over a tracked subset of processes. A process without an
/// own slot only merges, never increments.
class VectorClock {
 public:
  enum class Order { merge_then_increment, increment_then_merge };

  VectorClock(std::size_t length, std::optional<std::size_t> own_slot,
              Order order = Order::merge_then_increment);

  /// Advances the clock for one event and returns the event's timestamp.
  const VectorTimestamp& tick(const std::optional<VectorTimestamp>& incoming = std::nullopt);

  const VectorTimestamp& current() const noexcept { return clock_; }
  std::optional<std::size_t> own_slot() const noexcept { return own_slot_; }

 private:
  VectorTimestamp clock_;
  std::optional<std::size_t> own_slot_;
  Order order_;
};

/// Replays `trace` with one clock per process, slots assigned to `tracked` in the given
/// order. Returns every event's timestamp.
std::map<EventId, VectorTimestamp> assign_vector_clocks(const ExecutionTrace& trace,
                                                        std::span<const ProcessId> tracked);

}  // namespace causal
