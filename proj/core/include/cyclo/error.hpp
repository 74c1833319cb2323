#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cyclo {

enum class ErrorCode {
  NotSquarefree,
  NotOdd,
  TooLarge,
  NotInvertible,
  SearchExhausted,
  DegreeCapExceeded,
  LengthMismatch,
  InvalidZeroIndex,
  ScanBudgetExceeded,
  BudgetExceeded,
  InvalidArgument,
  VerificationFailed,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every recoverable failure in the library is reported through this type.
/// The code is stable and is what the CLI maps onto exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cyclo
