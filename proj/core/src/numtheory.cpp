#include "cyclo/numtheory.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>
#include <utility>

#include "cyclo/error.hpp"

namespace cyclo {
namespace {

using u128 = unsigned __int128;

u64 isqrt(u64 v) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(v)));
  while (r > 0 && static_cast<u128>(r) * r > v) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= v) ++r;
  return r;
}

}  // namespace

SquarefreeOdd SquarefreeOdd::from_primes(std::vector<u64> primes) {
  std::sort(primes.begin(), primes.end());
  SquarefreeOdd out;
  u64 value = 1;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const u64 p = primes[i];
    if (p % 2 == 0)
      throw Error(ErrorCode::NotOdd, "even factor " + std::to_string(p));
    if (!is_prime(p))
      throw Error(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
    if (i > 0 && primes[i - 1] == p)
      throw Error(ErrorCode::NotSquarefree, "repeated prime " + std::to_string(p));
    if (__builtin_mul_overflow(value, p, &value))
      throw Error(ErrorCode::TooLarge, "product exceeds 64 bits");
  }
  out.value_ = value;
  out.primes_ = std::move(primes);
  return out;
}

u64 SquarefreeOdd::totient() const noexcept {
  u64 t = 1;
  for (u64 p : primes_) t *= p - 1;
  return t;
}

SquarefreeOdd SquarefreeOdd::times(u64 p) const {
  std::vector<u64> ps = primes_;
  ps.push_back(p);
  return from_primes(std::move(ps));
}

SquarefreeOdd SquarefreeOdd::prefix(int k) const {
  SquarefreeOdd out;
  for (int i = 0; i < k && i < omega(); ++i) {
    out.primes_.push_back(primes_[i]);
    out.value_ *= primes_[i];
  }
  return out;
}

int mobius(u64 n) {
  int sign = 1;
  auto strip = [&](u64 p) -> bool {
    if (n % p != 0) return true;
    n /= p;
    if (n % p == 0) return false;
    sign = -sign;
    return true;
  };
  if (!strip(2)) return 0;
  for (u64 p = 3; p <= n / p; p += 2)
    if (!strip(p)) return 0;
  if (n > 1) sign = -sign;
  return sign;
}

SquarefreeOdd parse_squarefree_odd(u64 value) {
  if (value == 0) throw Error(ErrorCode::InvalidArgument, "n must be positive");
  if (value % 2 == 0)
    throw Error(ErrorCode::NotOdd, std::to_string(value) + " is even");
  std::vector<u64> primes;
  u64 rest = value;
  for (u64 p = 3; p <= kTrialDivisionLimit && p <= rest / p; p += 2) {
    if (rest % p != 0) continue;
    rest /= p;
    if (rest % p == 0)
      throw Error(ErrorCode::NotSquarefree,
                  std::to_string(value) + " is divisible by " + std::to_string(p) + "^2");
    primes.push_back(p);
  }
  if (rest > 1) {
    if (is_prime(rest)) {
      primes.push_back(rest);
    } else {
      const u64 r = isqrt(rest);
      if (r * r == rest && is_prime(r))
        throw Error(ErrorCode::NotSquarefree,
                    std::to_string(value) + " is divisible by " + std::to_string(r) + "^2");
      throw Error(ErrorCode::TooLarge,
                  "cofactor " + std::to_string(rest) + " exceeds the trial division budget");
    }
  }
  return SquarefreeOdd::from_primes(std::move(primes));
}

std::vector<SignedDivisor> divisors(const SquarefreeOdd& n) {
  const auto ps = n.primes();
  const int w = n.omega();
  std::vector<SignedDivisor> out;
  out.reserve(std::size_t{1} << w);
  for (u64 mask = 0; mask < (u64{1} << w); ++mask) {
    u64 d = 1;
    int missing = w;
    for (int i = 0; i < w; ++i)
      if (mask & (u64{1} << i)) {
        d *= ps[i];
        --missing;
      }
    out.push_back({d, (missing % 2 == 0) ? 1 : -1});
  }
  std::sort(out.begin(), out.end(),
            [](const SignedDivisor& a, const SignedDivisor& b) { return a.d < b.d; });
  return out;
}

u64 gcd(u64 a, u64 b) noexcept {
  while (b != 0) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

u64 mul_mod(u64 a, u64 b, u64 m) noexcept {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 pow_mod(u64 base, u64 exp, u64 m) noexcept {
  u64 result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

u64 mod_inverse(i64 a, u64 m) {
  if (m < 2) throw Error(ErrorCode::InvalidArgument, "modulus must be at least 2");
  const i64 sm = static_cast<i64>(m);
  i64 r0 = ((a % sm) + sm) % sm, r1 = sm;
  __int128 s0 = 1, s1 = 0;
  while (r1 != 0) {
    const i64 q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
  }
  if (r0 != 1)
    throw Error(ErrorCode::NotInvertible, std::to_string(a) + " is not a unit mod " +
                                              std::to_string(m));
  __int128 inv = s0 % sm;
  if (inv < 0) inv += sm;
  return static_cast<u64>(inv);
}

bool is_prime(u64 m) noexcept {
  if (m < 2) return false;
  static constexpr u64 kSmall[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 p : kSmall) {
    if (m == p) return true;
    if (m % p == 0) return false;
  }
  u64 d = m - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // The first twelve primes are a complete witness set below 3.3e24.
  for (u64 a : kSmall) {
    u64 x = pow_mod(a, d, m);
    if (x == 1 || x == m - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, m);
      if (x == m - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

u64 find_prime_in_class(const ResidueClass& cls, u64 lower, u64 max_candidates) {
  if (cls.modulus == 0) throw Error(ErrorCode::InvalidArgument, "modulus must be positive");
  const u64 r = cls.residue % cls.modulus;
  if (gcd(r, cls.modulus) != 1)
    throw Error(ErrorCode::InvalidArgument, "residue class is not a unit");
  // first term strictly above lower
  u64 term;
  if (lower < r) {
    term = r;
  } else {
    const u64 steps = (lower - r) / cls.modulus + 1;
    if (__builtin_mul_overflow(steps, cls.modulus, &term) ||
        __builtin_add_overflow(term, r, &term))
      throw Error(ErrorCode::TooLarge, "progression leaves the 64-bit range");
  }
  for (u64 k = 0; k < max_candidates; ++k) {
    if (is_prime(term)) return term;
    if (__builtin_add_overflow(term, cls.modulus, &term))
      throw Error(ErrorCode::TooLarge, "progression leaves the 64-bit range");
  }
  throw Error(ErrorCode::SearchExhausted,
              "no prime = " + std::to_string(r) + " mod " + std::to_string(cls.modulus) +
                  " above " + std::to_string(lower) + " within " +
                  std::to_string(max_candidates) + " terms");
}

u64 next_odd_prime_above(u64 lower) {
  u64 c = lower < 2 ? 3 : lower + 1;
  if (c % 2 == 0) ++c;
  while (!is_prime(c)) c += 2;
  return c;
}

}  // namespace cyclo
