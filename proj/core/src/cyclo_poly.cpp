#include "cyclo/cyclo_poly.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cyclo/error.hpp"

namespace cyclo {
namespace {

// Thrown by the int64 kernels when an intermediate leaves the 64-bit range;
// the caller then redoes the computation with GMP integers.
struct Int64Overflow {};

mpz_class from_i128(__int128 v) {
  const bool neg = v < 0;
  unsigned __int128 mag = neg ? -static_cast<unsigned __int128>(v)
                              : static_cast<unsigned __int128>(v);
  const u64 limbs[2] = {static_cast<u64>(mag), static_cast<u64>(mag >> 64)};
  mpz_class out;
  mpz_import(out.get_mpz_t(), 2, -1, sizeof(u64), 0, 0, limbs);
  if (neg) out = -out;
  return out;
}

void check_degree(const SquarefreeOdd& n, u64 cap) {
  if (n.totient() > cap)
    throw Error(ErrorCode::DegreeCapExceeded,
                "deg Phi_" + std::to_string(n.value()) + " = " +
                    std::to_string(n.totient()) + " exceeds the cap " + std::to_string(cap));
}

// ---------------------------------------------------------------------------
// Series quotient.
//
// Multiplying by (1 - z^d) and dividing by (1 - z^d) are both stride-d
// recurrences. Splitting the index range into blocks of length <= d makes
// source and destination of each block disjoint, so the inner loops carry no
// dependence and vectorize. Overflow is detected branch-free by or-ing the
// sign-bit overflow predicate into a flag.

bool mul_one_minus_zd(std::vector<i64>& c, std::size_t d) {
  const std::size_t top = c.size();  // exclusive
  if (d >= top) return false;
  auto* base = reinterpret_cast<u64*>(c.data());
  u64 flag = 0;
  std::size_t end = top;
  while (end > d) {
    const std::size_t start = std::max(d, end > d ? end - d : 0);
    u64* __restrict dst = base + start;
    const u64* __restrict src = base + start - d;
    const std::size_t len = end - start;
    for (std::size_t i = 0; i < len; ++i) {
      const u64 a = dst[i], b = src[i], r = a - b;
      flag |= (a ^ b) & (a ^ r);
      dst[i] = r;
    }
    end = start;
  }
  return (flag >> 63) != 0;
}

bool div_one_minus_zd(std::vector<i64>& c, std::size_t d) {
  const std::size_t top = c.size();
  if (d >= top) return false;
  auto* base = reinterpret_cast<u64*>(c.data());
  u64 flag = 0;
  for (std::size_t start = d; start < top; start += d) {
    u64* __restrict dst = base + start;
    const u64* __restrict src = base + start - d;
    const std::size_t len = std::min(d, top - start);
    for (std::size_t i = 0; i < len; ++i) {
      const u64 a = dst[i], b = src[i], r = a + b;
      flag |= (a ^ r) & (b ^ r);
      dst[i] = r;
    }
  }
  return (flag >> 63) != 0;
}

std::vector<i64> series_quotient_i64(const SquarefreeOdd& n) {
  const std::size_t len = n.totient() + 1;
  std::vector<i64> c(len, 0);
  c[0] = 1;
  const auto divs = divisors(n);
  bool overflow = false;
  for (const auto& [d, mu] : divs)
    if (mu > 0) overflow |= mul_one_minus_zd(c, d);
  for (const auto& [d, mu] : divs)
    if (mu < 0) overflow |= div_one_minus_zd(c, d);
  if (overflow) throw Int64Overflow{};
  return c;
}

std::vector<mpz_class> series_quotient_mpz(const SquarefreeOdd& n) {
  const std::size_t len = n.totient() + 1;
  std::vector<mpz_class> c(len, 0);
  c[0] = 1;
  const auto divs = divisors(n);
  for (const auto& [d, mu] : divs)
    if (mu > 0)
      for (std::size_t k = len; k-- > d;) c[k] -= c[k - d];
  for (const auto& [d, mu] : divs)
    if (mu < 0)
      for (std::size_t k = d; k < len; ++k) c[k] += c[k - d];
  return c;
}

// ---------------------------------------------------------------------------
// Recursive division.
//
// With psi_m = (z^m - 1) / Phi_m (the product of Phi_d over proper divisors),
//   Phi_{mp}(z) = Phi_m(z^p) psi_m(z) / (z^m - 1)
//   psi_{mp}(z) = Phi_m(z) psi_m(z^p)
// Division by the binomial z^m - 1 is linear time, and the quotient's running
// values are coefficients of Phi_{mp} itself, so nothing grows beyond the
// final height. The remainder is checked to be exactly zero.

template <class T>
struct Ring;

template <>
struct Ring<i64> {
  static bool is_zero(i64 v) { return v == 0; }
  static void add_product(i64& acc, i64 a, i64 b) {
    i64 prod;
    if (__builtin_mul_overflow(a, b, &prod) || __builtin_add_overflow(acc, prod, &acc))
      throw Int64Overflow{};
  }
  static i64 sub(i64 a, i64 b) {
    i64 r;
    if (__builtin_sub_overflow(a, b, &r)) throw Int64Overflow{};
    return r;
  }
};

template <>
struct Ring<mpz_class> {
  static bool is_zero(const mpz_class& v) { return sgn(v) == 0; }
  static void add_product(mpz_class& acc, const mpz_class& a, const mpz_class& b) {
    mpz_addmul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  }
  static mpz_class sub(const mpz_class& a, const mpz_class& b) { return a - b; }
};

// a(z^stride) * b(z)
template <class T>
std::vector<T> spread_times(const std::vector<T>& a, u64 stride, const std::vector<T>& b) {
  std::vector<T> out((a.size() - 1) * stride + b.size(), T(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (Ring<T>::is_zero(a[i])) continue;
    T* row = out.data() + i * stride;
    for (std::size_t j = 0; j < b.size(); ++j) Ring<T>::add_product(row[j], a[i], b[j]);
  }
  return out;
}

template <class T>
std::vector<T> divide_by_binomial(const std::vector<T>& p, u64 m, std::size_t quotient_len) {
  std::vector<T> q(quotient_len, T(0));
  for (std::size_t k = 0; k < quotient_len; ++k)
    q[k] = k >= m ? Ring<T>::sub(q[k - m], p[k]) : Ring<T>::sub(T(0), p[k]);
  // remainder check: p_k = q_{k-m} - q_k for every k beyond the quotient
  for (std::size_t k = quotient_len; k < p.size(); ++k) {
    const T expect = (k >= m && k - m < quotient_len) ? q[k - m] : T(0);
    if (!(expect == p[k]))
      throw Error(ErrorCode::VerificationFailed, "inexact division by z^m - 1");
  }
  return q;
}

template <class T>
std::vector<T> recursive_division(const SquarefreeOdd& n) {
  std::vector<T> phi{T(-1), T(1)};
  std::vector<T> psi{T(1)};
  u64 m = 1, phi_m = 1;
  const auto ps = n.primes();
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const u64 p = ps[i];
    const u64 phi_mp = phi_m * (p - 1);
    auto next_phi = divide_by_binomial(spread_times(phi, p, psi), m, phi_mp + 1);
    if (i + 1 < ps.size()) psi = spread_times(psi, p, phi);
    phi = std::move(next_phi);
    m *= p;
    phi_m = phi_mp;
  }
  return phi;
}

}  // namespace

// ---------------------------------------------------------------------------

CycloPoly::CycloPoly(u64 n, std::vector<mpz_class> coeffs) : n_(n) {
  const bool small = std::all_of(coeffs.begin(), coeffs.end(),
                                 [](const mpz_class& v) { return v.fits_slong_p(); });
  if (small) {
    std::vector<i64> s(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) s[i] = coeffs[i].get_si();
    coeffs_ = std::move(s);
  } else {
    coeffs_ = std::move(coeffs);
  }
}

std::size_t CycloPoly::size() const noexcept {
  return std::visit([](const auto& v) { return v.size(); }, coeffs_);
}

mpz_class CycloPoly::coeff(std::size_t i) const {
  if (const auto* s = std::get_if<std::vector<i64>>(&coeffs_)) return mpz_class(static_cast<long>((*s)[i]));
  return std::get<std::vector<mpz_class>>(coeffs_)[i];
}

double CycloPoly::coeff_as_double(std::size_t i) const {
  if (const auto* s = std::get_if<std::vector<i64>>(&coeffs_)) return static_cast<double>((*s)[i]);
  return std::get<std::vector<mpz_class>>(coeffs_)[i].get_d();
}

std::vector<mpz_class> CycloPoly::coefficients() const {
  std::vector<mpz_class> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(coeff(i));
  return out;
}

bool operator==(const CycloPoly& a, const CycloPoly& b) {
  if (a.n_ != b.n_ || a.size() != b.size()) return false;
  if (a.fits_int64() && b.fits_int64())
    return std::get<std::vector<i64>>(a.coeffs_) == std::get<std::vector<i64>>(b.coeffs_);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.coeff(i) != b.coeff(i)) return false;
  return true;
}

CycloPoly phi_coefficients(const SquarefreeOdd& n, CoeffMethod method, u64 degree_cap) {
  check_degree(n, degree_cap);
  if (n.value() == 1) return CycloPoly(1, std::vector<i64>{-1, 1});
  if (method == CoeffMethod::SeriesQuotient) {
    try {
      return CycloPoly(n.value(), series_quotient_i64(n));
    } catch (const Int64Overflow&) {
      return CycloPoly(n.value(), series_quotient_mpz(n));
    }
  }
  try {
    return CycloPoly(n.value(), recursive_division<i64>(n));
  } catch (const Int64Overflow&) {
    return CycloPoly(n.value(), recursive_division<mpz_class>(n));
  }
}

HeightReport height_report(const CycloPoly& poly) {
  HeightReport r;
  r.n = poly.n();
  r.degree = poly.degree();
  if (poly.fits_int64()) {
    u64 a = 0;
    __int128 s = 0;
    for (i64 c : poly.small_coeffs()) {
      const u64 mag = c < 0 ? u64(0) - static_cast<u64>(c) : static_cast<u64>(c);
      a = std::max(a, mag);
      s += mag;
    }
    r.A = from_i128(a);
    r.S = from_i128(s);
    return r;
  }
  r.A = 0;
  r.S = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const mpz_class mag = abs(poly.coeff(i));
    if (mag > r.A) r.A = mag;
    r.S += mag;
  }
  return r;
}

HeightReport height_report(const SquarefreeOdd& n, u64 degree_cap) {
  return height_report(phi_coefficients(n, CoeffMethod::SeriesQuotient, degree_cap));
}

RadicalReduction reduce_radical(u64 n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "n must be positive");
  RadicalReduction out;
  const int twos = __builtin_ctzll(n);
  u64 odd = n >> twos;
  std::vector<u64> primes;
  for (u64 p = 3; p <= kTrialDivisionLimit && p <= odd / p; p += 2) {
    if (odd % p != 0) continue;
    primes.push_back(p);
    while (odd % p == 0) odd /= p;
  }
  if (odd > 1) {
    if (is_prime(odd)) {
      primes.push_back(odd);
    } else {
      // cofactor with all prime factors above the trial bound: accept q^2, q^3
      bool found = false;
      for (int k : {2, 3}) {
        u64 q = static_cast<u64>(std::llround(std::pow(static_cast<double>(odd), 1.0 / k)));
        for (u64 c = q > 1 ? q - 1 : 1; c <= q + 1 && !found; ++c) {
          unsigned __int128 pw = 1;
          for (int j = 0; j < k; ++j) pw *= c;
          if (pw == odd && is_prime(c)) {
            primes.push_back(c);
            found = true;
          }
        }
      }
      if (!found)
        throw Error(ErrorCode::TooLarge, "cannot factor " + std::to_string(n) +
                                             " within the trial division budget");
    }
  }
  out.core = SquarefreeOdd::from_primes(primes);
  out.negate = twos > 0;
  const u64 radical = out.core.value() << (twos > 0 ? 1 : 0);
  out.exponent = n / radical;
  return out;
}

CycloPoly expand(const RadicalReduction& reduction, const CycloPoly& core_poly) {
  std::vector<mpz_class> c = core_poly.coefficients();
  if (reduction.negate) {
    for (std::size_t i = 1; i < c.size(); i += 2) c[i] = -c[i];
    // Phi_2(x) = -Phi_1(-x); for odd m > 1, Phi_2m(x) = Phi_m(-x)
    if (reduction.core.value() == 1)
      for (auto& v : c) v = -v;
  }
  const u64 e = reduction.exponent;
  std::vector<mpz_class> out((c.size() - 1) * e + 1, 0);
  for (std::size_t i = 0; i < c.size(); ++i) out[i * e] = c[i];
  const u64 n = reduction.core.value() * (reduction.negate ? 2 : 1) * e;
  return CycloPoly(n, std::move(out));
}

u64 m_bound_exponent(int omega, int i) {
  if (i < 1 || i > omega - 2) return 0;
  return (u64{1} << (omega - 1 - i)) - 1;
}

mpz_class m_bound(const SquarefreeOdd& n) {
  mpz_class m = 1;
  const auto ps = n.primes();
  for (int i = 1; i <= n.omega() - 2; ++i) {
    mpz_class f;
    mpz_ui_pow_ui(f.get_mpz_t(), ps[i - 1], m_bound_exponent(n.omega(), i));
    m *= f;
  }
  return m;
}

double m_alpha(const SquarefreeOdd& n, const ExponentVector& alpha) {
  if (alpha.alpha.size() != static_cast<std::size_t>(n.omega()))
    throw Error(ErrorCode::LengthMismatch, "exponent vector length differs from omega(n)");
  double v = 1.0;
  for (int i = 0; i < n.omega(); ++i)
    v *= std::pow(static_cast<double>(n.primes()[i]), alpha.alpha[i]);
  return v;
}

mpz_class m_alpha_exact(const SquarefreeOdd& n, const ExponentVector& alpha) {
  if (alpha.alpha.size() != static_cast<std::size_t>(n.omega()))
    throw Error(ErrorCode::LengthMismatch, "exponent vector length differs from omega(n)");
  mpz_class v = 1;
  for (int i = 0; i < n.omega(); ++i) {
    const double a = alpha.alpha[i];
    if (!(a >= 0) || a != std::floor(a) || a > 1e6)
      throw Error(ErrorCode::InvalidArgument, "exact mode needs nonnegative integer exponents");
    mpz_class f;
    mpz_ui_pow_ui(f.get_mpz_t(), n.primes()[i], static_cast<unsigned long>(a));
    v *= f;
  }
  return v;
}

std::strong_ordering lex_compare(const ExponentVector& a, const ExponentVector& b) {
  if (a.alpha.size() != b.alpha.size())
    throw Error(ErrorCode::LengthMismatch, "exponent vectors differ in length");
  for (std::size_t k = a.alpha.size(); k-- > 0;) {
    const double x = a.alpha[k], y = b.alpha[k];
    if (std::isnan(x) || std::isnan(y))
      throw Error(ErrorCode::InvalidArgument, "NaN exponent");
    if (x < y) return std::strong_ordering::less;
    if (x > y) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

}  // namespace cyclo
