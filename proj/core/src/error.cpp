#include "onoff/error.hpp"

namespace onoff {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotStochastic: return "NotStochastic";
    case ErrorCode::kDegenerateContext: return "DegenerateContext";
    case ErrorCode::kImpossibleContext: return "ImpossibleContext";
    case ErrorCode::kInfeasible: return "Infeasible";
    case ErrorCode::kHorizonTooLarge: return "HorizonTooLarge";
    case ErrorCode::kNotDecodable: return "NotDecodable";
    case ErrorCode::kDivisionByZero: return "DivisionByZero";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kBadMagic: return "BadMagic";
    case ErrorCode::kBadVersion: return "BadVersion";
    case ErrorCode::kBadKind: return "BadKind";
    case ErrorCode::kTruncatedFrame: return "TruncatedFrame";
    case ErrorCode::kTrailingBytes: return "TrailingBytes";
    case ErrorCode::kBadQueryMask: return "BadQueryMask";
    case ErrorCode::kRemote: return "RemoteError";
  }
  return "Unknown";
}

}  // namespace onoff
