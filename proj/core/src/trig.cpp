#include "cyclo/trig.hpp"

#include <bit>
#include <cmath>
#include <numbers>

namespace cyclo {
namespace {

// pi = kPiHi + kPiLo to about 107 bits
constexpr double kPiHi = 3.141592653589793116e+00;
constexpr double kPiLo = 1.224646799147353207e-16;

}  // namespace

ExactSine sin_pi_rational(__int128 a, std::uint64_t m) {
  const __int128 period = static_cast<__int128>(m) * 2;
  __int128 r = a % period;
  if (r < 0) r += period;
  if (r == 0 || r == static_cast<__int128>(m)) {
    __int128 k = a / static_cast<__int128>(m);
    return {0.0, true, static_cast<int>(k & 1)};
  }
  double sign = 1.0;
  if (r > static_cast<__int128>(m)) {
    r -= m;
    sign = -1.0;
  }
  // r in (0, m): fold onto (0, m/2]
  const std::uint64_t rr = static_cast<std::uint64_t>(r);
  const std::uint64_t folded = (rr > m - rr) ? m - rr : rr;
  const double t = static_cast<double>(folded) / static_cast<double>(m);
  return {sign * std::sin(std::numbers::pi * t), false, 0};
}

ExactSine sin_half_multiple(std::uint64_t d, double x) {
  const double dd = static_cast<double>(d);
  double p = dd * x;
  double e = std::fma(dd, x, -p);
  p *= 0.5;
  e *= 0.5;
  const double k = std::nearbyint(p / std::numbers::pi);
  double r = std::fma(-k, kPiHi, p);
  r = std::fma(-k, kPiLo, r);
  r += e;
  const int parity = std::fmod(std::fabs(k), 2.0) != 0.0 ? 1 : 0;
  if (r == 0.0) return {0.0, true, parity};
  const double s = std::sin(r);
  return {parity ? -s : s, false, 0};
}

PhaseTable::PhaseTable(std::uint64_t modulus) : modulus_(modulus) {
  const std::uint64_t span = 2 * modulus;
  // fine table of 2^shift entries with shift ~ log2(sqrt(span))
  shift_ = static_cast<unsigned>((std::bit_width(span) + 1) / 2);
  mask_ = (std::uint64_t{1} << shift_) - 1;
  fine_.resize(std::size_t{1} << shift_);
  for (std::uint64_t s = 0; s < fine_.size(); ++s) {
    fine_[s].s = sin_pi_rational(s, modulus).value;
    fine_[s].c = sin_pi_rational(static_cast<__int128>(s) * 2 + modulus, 2 * modulus).value;
  }
  coarse_.resize((span >> shift_) + 1);
  for (std::uint64_t q = 0; q < coarse_.size(); ++q) {
    const __int128 r = static_cast<__int128>(q) << shift_;
    coarse_[q].s = sin_pi_rational(r, modulus).value;
    coarse_[q].c = sin_pi_rational(r * 2 + modulus, 2 * modulus).value;
  }
}

}  // namespace cyclo
