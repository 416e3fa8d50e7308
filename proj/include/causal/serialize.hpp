#pragma once

#include "causal/simulator.hpp"

#include <filesystem>
#include <json.hpp>
#include <string>

namespace causal {

using Json = nlohmann::ordered_json;

/// Integer when the denominator is 1, otherwise "num/den".
Json rational_json(const Rational& x);
/// Accepts integers and "num/den" / "n" strings; floats are rejected. Throws Error(ParseError).
Rational rational_from_json(const Json& j);

Json to_json(const VectorTimestamp& ts);
/// {"id", "index", "vect", "next"}; id, index and next are null for cover events.
/// next lists every cover position as an integer, "inf" or "pending".
Json to_json(const InlineTimestamp& ts);
Json to_json(const AnyTimestamp& ts);
Json to_json(const ControlMessage& cm);
/// Per-process event arrays and the message table; every "at" is a "num/den" string.
Json to_json(const ExecutionTrace& trace);
/// Trace, timestamp log, query log and control log.
Json to_json(const RunResult& result);

Json to_json(const ScenarioScript& script);
/// Throws Error(ParseError) on malformed input; semantic checks are left to validate().
ScenarioScript scenario_from_json(const Json& j);
/// Throws Error(FileNotFound), Error(ParseError).
ScenarioScript load_scenario(const std::filesystem::path& path);

/// Human-readable forms: "(0,1)" and "(p3,1,(0,1),(3,inf))".
std::string format(const VectorTimestamp& ts);
std::string format(const InlineTimestamp& ts);
std::string format(const AnyTimestamp& ts);

}  // namespace causal
