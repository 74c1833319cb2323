#pragma once

// Sines of the half-angle multiples that make up F_n, evaluated so that the
// small values near removable singularities keep full relative accuracy.

#include <cstdint>
#include <vector>

namespace cyclo {

/// sin(pi * a / m) together with exactness information. When m divides a the
/// value is exactly zero and `parity` holds (a/m) mod 2, which fixes the sign
/// of the local slope: sin(pi*(k + e)) ~ (-1)^k * pi * e.
struct ExactSine {
  double value;
  bool zero;
  int parity;
};

ExactSine sin_pi_rational(__int128 a, std::uint64_t m);

/// sin(d * x / 2) with the argument reduced in double-double arithmetic, so
/// the result is accurate relative to the distance of d*x/2 from k*pi.
/// `zero` is set only when the reduced argument is exactly 0 (e.g. x == 0).
ExactSine sin_half_multiple(std::uint64_t d, double x);

/// Table of sin(pi * r / N) for r in [0, 2N), split into a coarse and a fine
/// table so memory stays O(sqrt N). Absolute error is a few ulps of 1; use
/// only for screening, never for reported values.
class PhaseTable {
 public:
  explicit PhaseTable(std::uint64_t modulus);

  std::uint64_t modulus() const noexcept { return modulus_; }

  double sin_pi(std::uint64_t r) const noexcept {
    const auto& hi = coarse_[r >> shift_];
    const auto& lo = fine_[r & mask_];
    return hi.s * lo.c + hi.c * lo.s;
  }

 private:
  struct SinCos {
    double s, c;
  };
  std::uint64_t modulus_;
  unsigned shift_;
  std::uint64_t mask_;
  std::vector<SinCos> coarse_;
  std::vector<SinCos> fine_;
};

}  // namespace cyclo
