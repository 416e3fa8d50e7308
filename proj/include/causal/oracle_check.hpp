#pragma once

#include "causal/simulator.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace causal {

struct Disagreement {
  EventId first;
  EventId second;
  std::optional<Rational> at;  // sample time; empty for online algorithms
  bool claimed = false;        // timestamp order says first -> second
  bool actual = false;         // oracle says first -> second
  int comparison_case = 0;     // 1..4 for inline timestamps, 0 otherwise
};

/// Aggregated outcome of checking one or more runs against the happened-before oracle.
struct CheckReport {
  std::size_t runs = 0;
  std::size_t events = 0;
  std::size_t comparisons = 0;
  std::array<std::size_t, 4> cases{};  // inline comparisons by case (i)..(iv)
  std::size_t samples = 0;             // sample times, quiescence included
  std::size_t ready_answers = 0;
  std::size_t blocked_answers = 0;
  std::size_t size_violations = 0;
  std::size_t mutation_violations = 0;
  std::size_t distinctness_violations = 0;
  std::size_t disagreement_count = 0;
  std::vector<Disagreement> disagreements;  // the first kMaxKept

  static constexpr std::size_t kMaxKept = 20;

  void merge(const CheckReport& other);
  bool clean() const noexcept {
    return disagreement_count == 0 && size_violations == 0 && mutation_violations == 0 &&
           distinctness_violations == 0;
  }
};

/// Which of the four comparison rules inline_less applies to (a, b): 1 same non-cover
/// process, 2 both in the cover, 3 a in the cover and b not, 4 a outside the cover.
int inline_case(const InlineTimestamp& a, const InlineTimestamp& b);

/// Runs the scenario and checks it.
///
/// Inline: after every simulation step, every occurred event is queried; all ordered pairs
/// of Ready answers are compared with inline_less against the oracle. Stored timestamps
/// are also watched for mutations (vect, id or index changing; a next entry moving
/// backwards or between finite values) and for their element count.
///
/// Online algorithms: the final timestamps are checked for length, pairwise distinctness
/// and vc_less against the oracle on every ordered pair.
CheckReport check_run(const ScenarioScript& script, Algorithm algo, RunResult* result = nullptr);

}  // namespace causal
