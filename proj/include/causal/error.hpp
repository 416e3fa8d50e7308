#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace causal {

enum class Errc {
  // graph
  SelfLoop,
  EndpointOutOfRange,
  TooLargeForExact,
  Disconnected,
  NotConnectivityOne,
  InvalidCover,
  // execution
  IndexGap,
  TimeNotIncreasing,
  ReceiveWithoutSend,
  DuplicateReceive,
  DuplicateMessage,
  NoChannel,
  UnknownEvent,
  QueryBeforeEvent,
  // clocks
  LengthMismatch,
  BadLength,
  NotStarTopology,
  CoverMismatch,
  OutOfOrderControl,
  UnknownSendIndex,
  PendingTimestamp,
  // simulation
  ScriptInvalid,
  AlgorithmTopologyMismatch,
  BadProcess,
  CandidateVectorTooLong,
  InvalidArgument,
  // io
  FileNotFound,
  ParseError,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace causal
