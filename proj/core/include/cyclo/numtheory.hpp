#pragma once

// Elementary number theory on 64-bit integers: squarefree odd factorizations,
// the Moebius function, divisor enumeration, modular inverses, deterministic
// primality and prime search in arithmetic progressions.

#include <cstdint>
#include <span>
#include <vector>

namespace cyclo {

using u64 = std::uint64_t;
using i64 = std::int64_t;

/// Trial division limit used by parse_squarefree_odd.
inline constexpr u64 kTrialDivisionLimit = 1'000'000;
/// Default number of progression terms find_prime_in_class examines.
inline constexpr u64 kDefaultSearchBudget = 100'000;

/// A positive odd squarefree integer with its prime factors p1 < ... < p_omega.
class SquarefreeOdd {
 public:
  SquarefreeOdd() = default;  // the integer 1

  /// Builds from distinct odd primes in any order. Throws on repeats, even
  /// or non-prime factors, and on 64-bit overflow of the product.
  static SquarefreeOdd from_primes(std::vector<u64> primes);

  u64 value() const noexcept { return value_; }
  std::span<const u64> primes() const noexcept { return primes_; }
  int omega() const noexcept { return static_cast<int>(primes_.size()); }

  /// phi(n) = prod (p_i - 1).
  u64 totient() const noexcept;

  /// n * p for a prime p not dividing n.
  SquarefreeOdd times(u64 p) const;

  /// The prefix p1 ... p_k.
  SquarefreeOdd prefix(int k) const;

  friend bool operator==(const SquarefreeOdd&, const SquarefreeOdd&) = default;

 private:
  u64 value_ = 1;
  std::vector<u64> primes_;
};

struct ResidueClass {
  u64 residue = 0;
  u64 modulus = 1;
};

/// A divisor d of n together with mu(n/d).
struct SignedDivisor {
  u64 d;
  int mu;
};

int mobius(u64 n);

SquarefreeOdd parse_squarefree_odd(u64 value);

/// All 2^omega divisors in ascending order, each with mu(n/d).
std::vector<SignedDivisor> divisors(const SquarefreeOdd& n);

u64 gcd(u64 a, u64 b) noexcept;
u64 mul_mod(u64 a, u64 b, u64 m) noexcept;
u64 pow_mod(u64 base, u64 exp, u64 m) noexcept;

/// b in [1, m) with a*b = 1 (mod m). Throws NotInvertible.
u64 mod_inverse(i64 a, u64 m);

/// Deterministic Miller-Rabin, exact on the whole 64-bit range.
bool is_prime(u64 m) noexcept;

/// Smallest prime p = residue (mod modulus) with p > lower, examining at most
/// max_candidates progression terms. Throws SearchExhausted.
u64 find_prime_in_class(const ResidueClass& cls, u64 lower,
                        u64 max_candidates = kDefaultSearchBudget);

/// Smallest odd prime strictly greater than lower.
u64 next_odd_prime_above(u64 lower);

}  // namespace cyclo
