#include "jury/error.h"

namespace jury {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidJury: return "InvalidJury";
    case ErrorCode::kInvalidJuror: return "InvalidJuror";
    case ErrorCode::kEvenSize: return "EvenSize";
    case ErrorCode::kSizeLimitExceeded: return "SizeLimitExceeded";
    case ErrorCode::kInvalidDistribution: return "InvalidDistribution";
    case ErrorCode::kEmptyPool: return "EmptyPool";
    case ErrorCode::kInvalidBudget: return "InvalidBudget";
    case ErrorCode::kNoAffordableJuror: return "NoAffordableJuror";
    case ErrorCode::kEmptyGraph: return "EmptyGraph";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kDegenerateScores: return "DegenerateScores";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

}  // namespace jury
