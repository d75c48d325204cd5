#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace jury {

enum class ErrorCode {
  kInvalidJury,
  kInvalidJuror,
  kEvenSize,
  kSizeLimitExceeded,
  kInvalidDistribution,
  kEmptyPool,
  kInvalidBudget,
  kNoAffordableJuror,
  kEmptyGraph,
  kInvalidConfig,
  kDegenerateScores,
  kParseError,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every failure raised by the library carries one of the codes above so
// that front ends can map them (the CLI turns them into exit statuses).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace jury
