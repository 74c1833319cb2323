#pragma once

#include <iosfwd>

namespace cyclo::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kDomain = 2,
  kBudget = 3,
  kSearchExhausted = 4,
  kVerificationFailed = 5,
};

/// Entry point of `cyclo-extremal`; reports go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cyclo::cli
