#include "causal/error.hpp"

namespace causal {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::SelfLoop: return "SelfLoop";
    case Errc::EndpointOutOfRange: return "EndpointOutOfRange";
    case Errc::TooLargeForExact: return "TooLargeForExact";
    case Errc::Disconnected: return "Disconnected";
    case Errc::NotConnectivityOne: return "NotConnectivityOne";
    case Errc::InvalidCover: return "InvalidCover";
    case Errc::IndexGap: return "IndexGap";
    case Errc::TimeNotIncreasing: return "TimeNotIncreasing";
    case Errc::ReceiveWithoutSend: return "ReceiveWithoutSend";
    case Errc::DuplicateReceive: return "DuplicateReceive";
    case Errc::DuplicateMessage: return "DuplicateMessage";
    case Errc::NoChannel: return "NoChannel";
    case Errc::UnknownEvent: return "UnknownEvent";
    case Errc::QueryBeforeEvent: return "QueryBeforeEvent";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::BadLength: return "BadLength";
    case Errc::NotStarTopology: return "NotStarTopology";
    case Errc::CoverMismatch: return "CoverMismatch";
    case Errc::OutOfOrderControl: return "OutOfOrderControl";
    case Errc::UnknownSendIndex: return "UnknownSendIndex";
    case Errc::PendingTimestamp: return "PendingTimestamp";
    case Errc::ScriptInvalid: return "ScriptInvalid";
    case Errc::AlgorithmTopologyMismatch: return "AlgorithmTopologyMismatch";
    case Errc::BadProcess: return "BadProcess";
    case Errc::CandidateVectorTooLong: return "CandidateVectorTooLong";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::FileNotFound: return "FileNotFound";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace causal
