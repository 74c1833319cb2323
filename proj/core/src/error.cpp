#include "cyclo/error.hpp"

namespace cyclo {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotSquarefree: return "NotSquarefree";
    case ErrorCode::NotOdd: return "NotOdd";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::SearchExhausted: return "SearchExhausted";
    case ErrorCode::DegreeCapExceeded: return "DegreeCapExceeded";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::InvalidZeroIndex: return "InvalidZeroIndex";
    case ErrorCode::ScanBudgetExceeded: return "ScanBudgetExceeded";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
  }
  return "Unknown";
}

}  // namespace cyclo
