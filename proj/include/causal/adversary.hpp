#pragma once

#include "causal/execution.hpp"
#include "causal/timestampers.hpp"

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace causal {

struct Violation {
  enum class Kind {
    duplicate,     // distinct events, equal timestamps
    false_order,   // timestamps ordered, events not
    missed_order,  // events ordered, timestamps not
  };

  Kind kind = Kind::duplicate;
  EventId first;
  EventId second;
  VectorTimestamp first_timestamp;
  VectorTimestamp second_timestamp;
  bool first_before_second = false;  // oracle verdicts
  bool second_before_first = false;
};

struct NoViolationFound {};

struct AdversaryReport {
  std::string candidate;
  std::size_t n = 0;
  std::size_t length = 0;
  std::vector<ProcessId> dominating;  // one radial per coordinate holding its maximum
  ProcessId last_sender = 0;
  std::variant<Violation, NoViolationFound> outcome;
  ExecutionTrace trace;
  std::map<EventId, VectorTimestamp> timestamps;
};

std::string_view to_string(Violation::Kind kind) noexcept;

/// Lower-bound construction against an online candidate on star(n): all radial processes
/// send to p0 first; a radial process that holds no coordinate maximum among those sends
/// is delivered last. Its send and p0's second-to-last receive are concurrent yet the
/// candidate's timestamps are forced to be ordered or equal. The reported violation is
/// that pair when it fails, otherwise the first failing pair in event order.
///
/// Throws Error(CandidateVectorTooLong) when the candidate's length exceeds n-2,
/// Error(InvalidArgument) for n < 3 or a candidate whose send stamps depend on delivery order.
AdversaryReport adversary_lemma1(OnlineTimestamper& candidate, std::size_t n);

}  // namespace causal
