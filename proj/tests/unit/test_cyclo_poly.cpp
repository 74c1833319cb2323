#include <doctest.h>

#include <fstream>
#include <nlohmann/json.hpp>

#include "cyclo/cyclo_poly.hpp"
#include "cyclo/error.hpp"

using namespace cyclo;

namespace {

std::vector<i64> small(const CycloPoly& p) {
  std::vector<i64> out;
  for (std::size_t i = 0; i < p.size(); ++i) out.push_back(p.coeff(i).get_si());
  return out;
}

}  // namespace

TEST_CASE("phi_coefficients small cases") {
  for (auto method : {CoeffMethod::SeriesQuotient, CoeffMethod::RecursiveDivision}) {
    CHECK(small(phi_coefficients(SquarefreeOdd{}, method)) == std::vector<i64>{-1, 1});
    CHECK(small(phi_coefficients(parse_squarefree_odd(3), method)) == std::vector<i64>{1, 1, 1});
    CHECK(small(phi_coefficients(parse_squarefree_odd(15), method)) ==
          std::vector<i64>{1, -1, 0, 1, -1, 1, 0, -1, 1});
    const auto p105 = phi_coefficients(parse_squarefree_odd(105), method);
    CHECK(p105.degree() == 48);
    CHECK(p105.coeff(7) == -2);
  }
}

TEST_CASE("height_report") {
  const auto h3 = height_report(parse_squarefree_odd(3));
  CHECK(h3.A == 1);
  CHECK(h3.S == 3);
  CHECK(h3.degree == 2);
  CHECK(height_report(parse_squarefree_odd(15)).A == 1);
  const auto h105 = height_report(parse_squarefree_odd(105));
  CHECK(h105.A == 2);
  CHECK(h105.S == 35);
}

TEST_CASE("coefficients match the frozen sympy expansion") {
  std::ifstream in(CYCLO_FIXTURE_DIR "/phi_oracle.json");
  REQUIRE(in);
  const auto oracle = nlohmann::json::parse(in);
  for (const auto& row : oracle) {
    const u64 n = row["n"].get<u64>();
    CAPTURE(n);
    const auto sq = parse_squarefree_odd(n);
    const auto a = phi_coefficients(sq, CoeffMethod::SeriesQuotient);
    const auto b = phi_coefficients(sq, CoeffMethod::RecursiveDivision);
    CHECK(a == b);
    const auto h = height_report(a);
    CHECK(h.A.get_str() == row["A"].get<std::string>());
    CHECK(h.S.get_str() == row["S"].get<std::string>());
    CHECK(h.degree == row["degree"].get<u64>());
    const auto& head = row["head"];
    for (std::size_t i = 0; i < head.size(); ++i) CHECK(a.coeff(i).get_str() == head[i]);
  }
}

TEST_CASE("palindromic and degree phi(n)") {
  for (u64 n = 3; n < 3000; n += 2) {
    if (mobius(n) == 0) continue;
    const auto sq = parse_squarefree_odd(n);
    const auto p = phi_coefficients(sq);
    REQUIRE(p.degree() == sq.totient());
    for (std::size_t i = 0; i <= p.degree(); ++i) REQUIRE(p.coeff(i) == p.coeff(p.degree() - i));
    REQUIRE(p.coeff(0) == 1);
  }
}

TEST_CASE("degree cap") {
  CHECK_THROWS_AS(phi_coefficients(parse_squarefree_odd(105), CoeffMethod::SeriesQuotient, 47),
                  Error);
  try {
    phi_coefficients(parse_squarefree_odd(105), CoeffMethod::RecursiveDivision, 10);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegreeCapExceeded);
  }
}

TEST_CASE("storage forms compare by value") {
  const CycloPoly a(15, std::vector<i64>{1, -1, 0, 1, -1, 1, 0, -1, 1});
  const CycloPoly b(15, std::vector<mpz_class>{1, -1, 0, 1, -1, 1, 0, -1, 1});
  CHECK(a == b);
  CHECK(b.fits_int64());
  const mpz_class big = mpz_class(1) << 70;
  const CycloPoly c(15, std::vector<mpz_class>{big, 1});
  CHECK_FALSE(c.fits_int64());
  CHECK(c.coeff(0) == big);
  CHECK_FALSE(c == a);
}

TEST_CASE("reduce_radical and expand") {
  const auto r12 = reduce_radical(12);
  CHECK(r12.core.value() == 3);
  CHECK(r12.negate);
  CHECK(r12.exponent == 2);
  CHECK(small(expand(r12, phi_coefficients(r12.core))) == std::vector<i64>{1, 0, -1, 0, 1});
  const auto r15 = reduce_radical(15);
  CHECK(r15.core.value() == 15);
  CHECK_FALSE(r15.negate);
  CHECK(r15.exponent == 1);
  CHECK(reduce_radical(7).core.value() == 7);
  const auto r2 = reduce_radical(2);
  CHECK(small(expand(r2, phi_coefficients(r2.core))) == std::vector<i64>{1, 1});
  const auto r9 = reduce_radical(9);
  CHECK(small(expand(r9, phi_coefficients(r9.core))) ==
        std::vector<i64>{1, 0, 0, 1, 0, 0, 1});
}

TEST_CASE("m_bound") {
  CHECK(m_bound(parse_squarefree_odd(15)) == 1);
  CHECK(m_bound(parse_squarefree_odd(105)) == 3);
  CHECK(m_bound(SquarefreeOdd{}) == 1);
  CHECK(m_bound_exponent(5, 1) == 7);
  CHECK(m_bound_exponent(5, 2) == 3);
  CHECK(m_bound_exponent(5, 3) == 1);
  CHECK(m_bound_exponent(5, 4) == 0);
  CHECK(m_bound_exponent(5, 5) == 0);
  const auto n = SquarefreeOdd::from_primes({3, 5, 7, 11, 13});
  CHECK(m_bound(n) == 3 * 3 * 3 * 3 * 3 * 3 * 3 * 125 * 7);
}

TEST_CASE("m_alpha") {
  const auto n105 = parse_squarefree_odd(105);
  CHECK(m_alpha(n105, {{1, 0, 0}}) == doctest::Approx(3));
  CHECK(m_alpha(n105, {{0, 0, 0}}) == doctest::Approx(1));
  CHECK(m_alpha(parse_squarefree_odd(15), {{2, 1}}) == doctest::Approx(45));
  CHECK(m_alpha_exact(parse_squarefree_odd(15), {{2, 1}}) == 45);
  CHECK_THROWS_AS(m_alpha(n105, {{1, 0}}), Error);
  CHECK_THROWS_AS(m_alpha_exact(n105, {{0.5, 0, 0}}), Error);
}

TEST_CASE("lex_compare scans from the last coordinate") {
  CHECK(lex_compare({{8, 2, 1, 0, 0}}, {{7, 3, 1, 0, 0}}) == std::strong_ordering::less);
  CHECK(lex_compare({{7, 3, 1, 0, 0}}, {{8, 2, 1, 0, 0}}) == std::strong_ordering::greater);
  CHECK(lex_compare({{1, 2, 3}}, {{1, 2, 3}}) == std::strong_ordering::equal);
  CHECK(lex_compare({{0, 0, 0, 1}}, {{0, 0, 0, 0}}) == std::strong_ordering::greater);
  CHECK(lex_compare({{100, 0}}, {{0, 1}}) == std::strong_ordering::less);
  CHECK_THROWS_AS(lex_compare({{1, 2}}, {{1, 2, 3}}), Error);
}
