#pragma once

// The lower-bound constant
//
//   c_w = (1/w) * (2/pi)^(3 * 2^(w-3)) / prod_{k=3}^{w-1} k^(2^(w-1-k)),
//
// its recursive form c_{w+1} = 8 / (pi^3 (w+1)) * prod_{i=3}^{w} c_i, and the
// exponent bookkeeping behind the tower bound. c_w decays like 0.71^(2^w) and
// leaves the binary64 range at w = 11, so values are carried as natural logs
// in quad precision and only converted to double when representable.

#include <cstdint>

namespace cyclo {

struct BoundConstant {
  int omega = 0;
  /// c_omega, or 0 when it underflows binary64 (see log_space)
  double value = 0;
  double log2_value = 0;
  /// value is not representable; use log2_value
  bool log_space = false;
};

/// Closed form. 3 <= omega <= 60.
BoundConstant c_constant(int omega);

struct RecurrenceCheck {
  BoundConstant closed;
  BoundConstant recurred;
  /// |c_closed / c_recurred - 1|, evaluated in quad precision
  double relative_difference = 0;
};

RecurrenceCheck c_recurrence_check(int omega);

/// c_omega^(2^-omega), which tends to (2/pi)^(3/8) prod_{k>=3} k^(-2^(-k-1)).
double c_root(int omega);

struct ExponentIdentity {
  std::uint64_t lhs = 0;
  std::uint64_t rhs = 0;
};

/// Exponent of p_k in prod_{i=1}^{omega} (p_1...p_i M_{p_1...p_i}), summed term
/// by term as omega - k + 1 + sum_{i=k+2}^{omega} (2^(i-k-1) - 1), against
/// 2^(omega-k). 1 <= k <= omega <= 62.
ExponentIdentity exponent_identity_check(int omega, int k);

}  // namespace cyclo
