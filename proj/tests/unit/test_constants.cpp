#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cyclo/constants.hpp"

using namespace cyclo;

TEST_CASE("c_constant closed form") {
  const double two_over_pi = 2 / std::numbers::pi;
  CHECK(c_constant(3).value == doctest::Approx(std::pow(two_over_pi, 3) / 3).epsilon(1e-15));
  CHECK(c_constant(3).value == doctest::Approx(0.0860040918218653).epsilon(1e-14));
  CHECK(c_constant(4).value == doctest::Approx(std::pow(two_over_pi, 6) / 12).epsilon(1e-15));
  CHECK(c_constant(4).value == doctest::Approx(0.00554752785757788).epsilon(1e-14));
  CHECK(c_constant(5).value == doctest::Approx(2.462005226448209e-05).epsilon(1e-14));
  CHECK(c_constant(6).value == doctest::Approx(5.051224779215247e-10).epsilon(1e-14));
  CHECK_FALSE(c_constant(10).log_space);
  CHECK(c_constant(20).log_space);
  CHECK(c_constant(20).value == 0);
  CHECK(std::isfinite(c_constant(60).log2_value));
}

TEST_CASE("c_constant recurrence") {
  for (int w = 3; w <= 30; ++w) {
    CAPTURE(w);
    CHECK(c_recurrence_check(w).relative_difference <= 1e-12);
  }
  CHECK(c_recurrence_check(3).recurred.value == doctest::Approx(8 / (3 * std::pow(std::numbers::pi, 3))));
}

TEST_CASE("c_root tends to 0.71") {
  CHECK(c_root(30) == doctest::Approx(0.71418226342294).epsilon(1e-12));
  CHECK(c_root(30) >= 0.70);
  CHECK(c_root(30) <= 0.72);
  CHECK(std::fabs(c_root(40) - c_root(30)) < 1e-3);
}

TEST_CASE("exponent identity") {
  CHECK(exponent_identity_check(3, 1).lhs == 4);
  CHECK(exponent_identity_check(3, 1).rhs == 4);
  CHECK(exponent_identity_check(5, 5).lhs == 1);
  CHECK(exponent_identity_check(6, 2).lhs == 16);
  for (int w = 1; w <= 62; ++w)
    for (int k = 1; k <= w; ++k) {
      const auto e = exponent_identity_check(w, k);
      REQUIRE(e.lhs == e.rhs);
    }
}
