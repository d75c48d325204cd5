#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "jury/error.h"

namespace jury::cli {

// Process exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 2;
inline constexpr int kExitEvenSize = 3;
inline constexpr int kExitSizeCap = 4;
inline constexpr int kExitInfeasible = 5;
inline constexpr int kExitDegenerate = 6;

int ExitCodeFor(ErrorCode code);

/// Runs `jurysel` with args (args[0] is the program name). Results go to
/// `out`, diagnostics to `err`. Returns the process exit status.
int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace jury::cli
