#include <doctest.h>

#include <random>

#include "cyclo/error.hpp"
#include "cyclo/numtheory.hpp"

using namespace cyclo;

namespace {

bool trial_prime(u64 m) {
  if (m < 2) return false;
  for (u64 d = 2; d * d <= m; ++d)
    if (m % d == 0) return false;
  return true;
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("mobius") {
  CHECK(mobius(1) == 1);
  CHECK(mobius(30) == -1);
  CHECK(mobius(12) == 0);
  CHECK(mobius(15) == 1);
  CHECK(mobius(7) == -1);
}

TEST_CASE("parse_squarefree_odd") {
  const auto n = parse_squarefree_odd(105);
  CHECK(std::vector<u64>(n.primes().begin(), n.primes().end()) == std::vector<u64>{3, 5, 7});
  CHECK(n.omega() == 3);
  CHECK(n.totient() == 48);
  CHECK(parse_squarefree_odd(1).primes().empty());
  CHECK(parse_squarefree_odd(1).value() == 1);
  CHECK(code_of([] { parse_squarefree_odd(9); }) == ErrorCode::NotSquarefree);
  CHECK(code_of([] { parse_squarefree_odd(30); }) == ErrorCode::NotOdd);
  // cofactor is the square of a prime above the trial-division limit
  CHECK(code_of([] { parse_squarefree_odd(1000003ull * 1000003ull); }) ==
        ErrorCode::NotSquarefree);
  // large prime cofactor
  CHECK(parse_squarefree_odd(3ull * 1000000007ull).omega() == 2);
}

TEST_CASE("SquarefreeOdd construction") {
  const auto n = SquarefreeOdd::from_primes({7, 3, 5});
  CHECK(n.value() == 105);
  CHECK(n.primes()[0] == 3);
  CHECK(n.prefix(2).value() == 15);
  CHECK(n.times(11).value() == 1155);
  CHECK_THROWS_AS(SquarefreeOdd::from_primes({3, 3}), Error);
  CHECK_THROWS_AS(SquarefreeOdd::from_primes({2, 3}), Error);
  CHECK_THROWS_AS(SquarefreeOdd::from_primes({9}), Error);
  CHECK(code_of([] { SquarefreeOdd::from_primes({4294967311ull, 4294967357ull}); }) ==
        ErrorCode::TooLarge);
}

TEST_CASE("divisors carry mu(n/d)") {
  const auto d15 = divisors(parse_squarefree_odd(15));
  REQUIRE(d15.size() == 4);
  const u64 ds[] = {1, 3, 5, 15};
  const int mus[] = {1, -1, -1, 1};
  for (int i = 0; i < 4; ++i) {
    CHECK(d15[i].d == ds[i]);
    CHECK(d15[i].mu == mus[i]);
  }
  const auto d1 = divisors(SquarefreeOdd{});
  REQUIRE(d1.size() == 1);
  CHECK(d1[0].d == 1);
  CHECK(d1[0].mu == 1);
  const auto d105 = divisors(parse_squarefree_odd(105));
  CHECK(d105.size() == 8);
  int plus = 0;
  for (const auto& d : d105) plus += d.mu > 0;
  CHECK(plus == 4);
}

TEST_CASE("mod_inverse") {
  CHECK(mod_inverse(2, 5) == 3);
  CHECK(mod_inverse(1, 7) == 1);
  CHECK(mod_inverse(4, 15) == 4);
  CHECK(mod_inverse(-2, 5) == 2);
  CHECK(code_of([] { mod_inverse(3, 15); }) == ErrorCode::NotInvertible);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    const u64 m = 2 + rng() % 1'000'000'000'000ull;
    const u64 a = rng() % m;
    if (gcd(a, m) != 1) continue;
    CHECK(mul_mod(a, mod_inverse(static_cast<i64>(a), m), m) == 1 % m);
  }
}

TEST_CASE("is_prime") {
  CHECK(is_prime(2));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(0));
  CHECK_FALSE(is_prime(3599));
  CHECK(is_prime(18446744073709551557ull));          // largest 64-bit prime
  CHECK_FALSE(is_prime(3825123056546413051ull));     // strong pseudoprime to bases 2..23
  for (u64 m = 0; m < 20000; ++m) CHECK(is_prime(m) == trial_prime(m));
}

TEST_CASE("find_prime_in_class") {
  CHECK(find_prime_in_class({2, 3}, 3, 100) == 5);
  CHECK(find_prime_in_class({1, 4}, 10, 100) == 13);
  CHECK(find_prime_in_class({2, 15}, 15, 100) == 17);
  CHECK(code_of([] { find_prime_in_class({0, 15}, 15, 100); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { find_prime_in_class({2, 4}, 0, 100); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { find_prime_in_class({1, 1000}, 0, 1); }) == ErrorCode::SearchExhausted);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const u64 m = 3 + rng() % 5000;
    u64 r = rng() % m;
    if (gcd(r, m) != 1) continue;
    const u64 lower = rng() % 100000;
    const u64 p = find_prime_in_class({r, m}, lower, 1'000'000);
    CHECK(p > lower);
    CHECK(p % m == r);
    CHECK(is_prime(p));
    for (u64 q = p; q > lower + m && q >= m;) {
      q -= m;
      if (q <= lower) break;
      CHECK_FALSE(is_prime(q));
    }
  }
}

TEST_CASE("next_odd_prime_above") {
  CHECK(next_odd_prime_above(0) == 3);
  CHECK(next_odd_prime_above(2) == 3);
  CHECK(next_odd_prime_above(3) == 5);
  CHECK(next_odd_prime_above(24) == 29);
}
