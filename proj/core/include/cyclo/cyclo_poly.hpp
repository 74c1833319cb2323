#pragma once

// Exact coefficients of cyclotomic polynomials and the height quantities built
// on them: A_n (largest |coefficient|), S_n (sum of |coefficients|), the
// benchmark product M_n and its generalization M_n^(alpha).

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "cyclo/numtheory.hpp"

namespace cyclo {

inline constexpr u64 kDefaultDegreeCap = 1'000'000;

enum class CoeffMethod {
  /// prod (1 - z^d) over mu(n/d) = +1, then divided by the mu = -1 factors as
  /// power series truncated at phi(n).
  SeriesQuotient,
  /// Phi_{mp}(z) = Phi_m(z^p) / Phi_m(z), one prime at a time.
  RecursiveDivision,
};

/// Phi_n with exact integer coefficients; index i holds the coefficient of x^i.
/// Coefficients are kept as int64 when they all fit and as GMP integers
/// otherwise; the two storage forms compare equal when their values agree.
class CycloPoly {
 public:
  CycloPoly(u64 n, std::vector<i64> coeffs) : n_(n), coeffs_(std::move(coeffs)) {}
  CycloPoly(u64 n, std::vector<mpz_class> coeffs);

  u64 n() const noexcept { return n_; }
  u64 degree() const noexcept { return size() - 1; }
  std::size_t size() const noexcept;

  mpz_class coeff(std::size_t i) const;
  std::vector<mpz_class> coefficients() const;

  bool fits_int64() const noexcept {
    return std::holds_alternative<std::vector<i64>>(coeffs_);
  }
  /// Only valid when fits_int64().
  std::span<const i64> small_coeffs() const { return std::get<std::vector<i64>>(coeffs_); }

  double coeff_as_double(std::size_t i) const;

  friend bool operator==(const CycloPoly& a, const CycloPoly& b);

 private:
  u64 n_;
  std::variant<std::vector<i64>, std::vector<mpz_class>> coeffs_;
};

struct HeightReport {
  u64 n = 1;
  mpz_class A;
  mpz_class S;
  u64 degree = 0;
};

/// Phi_n for n = 2^k * m recovered from Phi_rad(m): optional x -> -x (when n is
/// even) followed by x -> x^exponent.
struct RadicalReduction {
  SquarefreeOdd core;
  bool negate = false;
  u64 exponent = 1;
};

RadicalReduction reduce_radical(u64 n);

/// Applies a reduction to the coefficients of Phi_core.
CycloPoly expand(const RadicalReduction& reduction, const CycloPoly& core_poly);

CycloPoly phi_coefficients(const SquarefreeOdd& n,
                           CoeffMethod method = CoeffMethod::SeriesQuotient,
                           u64 degree_cap = kDefaultDegreeCap);

HeightReport height_report(const CycloPoly& poly);
HeightReport height_report(const SquarefreeOdd& n, u64 degree_cap = kDefaultDegreeCap);

/// M_n = prod_{i <= omega-2} p_i^(2^(omega-1-i) - 1); 1 when omega <= 2.
mpz_class m_bound(const SquarefreeOdd& n);

/// Exponent of p_i (1-based) in M_n for order omega.
u64 m_bound_exponent(int omega, int i);

struct ExponentVector {
  std::vector<double> alpha;
};

/// prod p_i^alpha_i in binary64.
double m_alpha(const SquarefreeOdd& n, const ExponentVector& alpha);

/// Exact prod p_i^alpha_i; every exponent must be a nonnegative integer.
mpz_class m_alpha_exact(const SquarefreeOdd& n, const ExponentVector& alpha);

/// The order on exponent vectors used to rank bounds of the form M_n^(alpha):
/// coordinates are compared from the last one backwards and the first
/// difference decides, so the highest-index coordinate dominates.
std::strong_ordering lex_compare(const ExponentVector& a, const ExponentVector& b);

}  // namespace cyclo
