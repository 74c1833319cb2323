#include "cyclo/constants.hpp"

#include <quadmath.h>

#include <cfloat>
#include <string>

#include "cyclo/error.hpp"

namespace cyclo {
namespace {

using quad = __float128;

quad ln_c_closed(int w) {
  const quad two_pow = ldexpq(1.0Q, w - 3);
  quad v = -logq(static_cast<quad>(w)) + 3 * two_pow * logq(2 / M_PIq);
  for (int k = 3; k <= w - 1; ++k) v -= ldexpq(1.0Q, w - 1 - k) * logq(static_cast<quad>(k));
  return v;
}

quad ln_c_recurred(int w) {
  // c_3 from the empty product at w = 2, then c_{j+1} = 8/(pi^3 (j+1)) prod c_i
  const quad ln8pi3 = logq(8.0Q) - 3 * logq(M_PIq);
  quad sum = 0;  // sum_{i=3}^{j} ln c_i
  quad current = 0;
  for (int j = 2; j < w; ++j) {
    current = ln8pi3 - logq(static_cast<quad>(j + 1)) + sum;
    sum += current;
  }
  return current;
}

BoundConstant from_ln(int w, quad ln_value) {
  BoundConstant c;
  c.omega = w;
  c.log2_value = static_cast<double>(ln_value / M_LN2q);
  if (ln_value > logq(static_cast<quad>(DBL_MIN))) {
    c.value = static_cast<double>(expq(ln_value));
  } else {
    c.value = 0;
    c.log_space = true;
  }
  return c;
}

void check_omega(int w, int hi) {
  if (w < 3 || w > hi)
    throw Error(ErrorCode::InvalidArgument,
                "omega must lie in [3, " + std::to_string(hi) + "], got " + std::to_string(w));
}

}  // namespace

BoundConstant c_constant(int omega) {
  check_omega(omega, 60);
  return from_ln(omega, ln_c_closed(omega));
}

RecurrenceCheck c_recurrence_check(int omega) {
  check_omega(omega, 60);
  const quad closed = ln_c_closed(omega);
  const quad rec = ln_c_recurred(omega);
  RecurrenceCheck out;
  out.closed = from_ln(omega, closed);
  out.recurred = from_ln(omega, rec);
  out.relative_difference = static_cast<double>(fabsq(expm1q(closed - rec)));
  return out;
}

double c_root(int omega) {
  check_omega(omega, 60);
  return static_cast<double>(expq(ldexpq(ln_c_closed(omega), -omega)));
}

ExponentIdentity exponent_identity_check(int omega, int k) {
  if (k < 1 || k > omega || omega > 62)
    throw Error(ErrorCode::InvalidArgument, "need 1 <= k <= omega <= 62");
  ExponentIdentity e;
  e.lhs = static_cast<std::uint64_t>(omega - k + 1);
  for (int i = k + 2; i <= omega; ++i) e.lhs += (std::uint64_t{1} << (i - k - 1)) - 1;
  e.rhs = std::uint64_t{1} << (omega - k);
  return e;
}

}  // namespace cyclo
