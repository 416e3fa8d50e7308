#pragma once

#include "causal/adversary.hpp"
#include "causal/oracle_check.hpp"
#include "causal/serialize.hpp"

#include <filesystem>
#include <optional>
#include <string>

namespace causal {

struct RunOptions {
  std::filesystem::path scenario;
  Algorithm algo = Algorithm::inline_ts;
  /// "exact", "greedy" or a comma-separated member list; overrides the scenario's cover.
  std::optional<std::string> cover;
  /// Receives the trace, timestamp log, query log and control log as JSON.
  std::optional<std::filesystem::path> out;
  bool check_oracle = false;
};

struct RunReport {
  std::string scenario_id;
  std::string algorithm;
  std::optional<std::vector<ProcessId>> cover;
  std::size_t events = 0;
  std::size_t queries_ready = 0;
  std::size_t queries_blocked = 0;
  std::size_t query_errors = 0;
  std::vector<std::string> query_lines;
  std::optional<CheckReport> check;
  double seconds = 0;
};

/// Throws FileNotFound, ParseError and every error of Simulation.
RunReport cmd_run(const RunOptions& options);

struct FuzzOptions {
  std::size_t n = 6;
  std::size_t events = 30;
  std::size_t iters = 100;
  std::uint64_t seed = 1;
  Algorithm algo = Algorithm::inline_ts;
  double edge_probability = 0.4;
  std::uint32_t max_delay = 6;
  CoverSpec::Mode cover = CoverSpec::Mode::exact;
  unsigned jobs = 1;
};

/// Largest n accepted by cmd_fuzz; keeps the exact cover search tractable.
constexpr std::size_t kFuzzMaxProcesses = 20;

struct FuzzReport {
  FuzzOptions options;
  CheckReport check;
  std::vector<std::uint64_t> failing_seeds;
  double seconds = 0;
};

/// Iteration i runs the random scenario with seed `options.seed + i`; the star algorithm
/// forces a star topology. Throws Error(InvalidArgument) for n out of range.
FuzzReport cmd_fuzz(const FuzzOptions& options);

/// Throws InvalidArgument for unknown candidates, CandidateVectorTooLong.
AdversaryReport cmd_adversary(std::size_t n, std::string_view candidate);

Json to_json(const CheckReport& report);
Json to_json(const RunReport& report, bool timing);
Json to_json(const FuzzReport& report, bool timing);
Json to_json(const AdversaryReport& report);

std::string summary(const RunReport& report, bool timing);
std::string summary(const FuzzReport& report, bool timing);
std::string summary(const AdversaryReport& report);

/// 0 when clean, 1 on any oracle disagreement or check violation.
int exit_code(const RunReport& report);
int exit_code(const FuzzReport& report);
/// 0 when a violation confirmed by the oracle was found, 1 otherwise.
int exit_code(const AdversaryReport& report);

}  // namespace causal
