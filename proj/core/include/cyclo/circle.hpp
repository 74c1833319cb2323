#pragma once

// Unit-circle analysis of Phi_n through the sine product
//
//   F_n(x) = prod_{d | n} sin(d x / 2)^mu(n/d),   |F_n(x)| = |Phi_n(e^{ix})|,
//
// with removable singularities filled in by continuity. L_n is the maximum of
// |F_n| and D_n the smallest slope |F_n'| over the zeros 2*pi*t/n, gcd(t,n)=1.

#include <cstdint>
#include <span>
#include <vector>

#include "cyclo/cyclo_poly.hpp"
#include "cyclo/numtheory.hpp"

namespace cyclo {

/// The angle 2*pi*num/den, kept exact so that singular points are detected
/// with integer arithmetic instead of floating-point comparisons.
struct Turn {
  i64 num = 0;
  u64 den = 1;

  double radians() const noexcept;
};

struct CircleConfig {
  int grid_mult = 16;
  double tolerance = 1e-12;
  int max_refine_iters = 200;
  /// number of grid maxima (and, separately, seed points) refined
  int candidates = 8;
  bool refine = true;
  /// cap on |F_n| evaluations of the grid scan
  u64 eval_cap = 2'000'000'000;
  /// compute_D refuses n above this
  u64 scan_budget = 100'000'000;
};

struct CircleMax {
  double L = 0;
  double x_M = 0;
  bool refined = false;
};

struct ZeroSlope {
  double D = 0;
  u64 t0 = 0;
};

struct CircleProfile {
  SquarefreeOdd n;
  double L = 0;
  double x_M = 0;
  double D = 0;
  u64 t0 = 0;
  int grid_mult = 16;
  bool refined = false;
};

/// Signed F_n(x).
double eval_F(const SquarefreeOdd& n, double x);
double eval_F(const SquarefreeOdd& n, Turn x);

/// |Phi_n(e^{ix})| from the coefficient vector (compensated summation).
double eval_phi_circle(const CycloPoly& poly, double x);

/// |F_n'(2*pi*t0/n)| from the product over proper divisors. For n = 1 the
/// only zero is t0 = 0 with slope 1/2.
double derivative_at_zero(const SquarefreeOdd& n, u64 t0);

/// Exact minimum of derivative_at_zero over all t coprime to n, t <= n/2;
/// the smallest minimizing t is returned.
ZeroSlope compute_D(const SquarefreeOdd& n, const CircleConfig& cfg = {});

/// Throws BudgetExceeded when the compute_L grid for n is above cfg.eval_cap.
void check_grid_budget(const SquarefreeOdd& n, const CircleConfig& cfg);

/// Grid of grid_mult * phi(n) points plus `seeds`, best candidates refined by
/// golden-section search. L is attained at x_M, so it is a lower bound for
/// the true maximum.
CircleMax compute_L(const SquarefreeOdd& n, const CircleConfig& cfg = {},
                    std::span<const double> seeds = {});

CircleProfile circle_profile(const SquarefreeOdd& n, const CircleConfig& cfg = {},
                             std::span<const double> seeds = {});

/// The points (x + 2*pi*k) / p, k = 0..p-1, where |F_np| = |F_n(px)/F_n(x)|
/// reaches |F_n(x)|/|F_n((x + 2*pi*k)/p)|.
std::vector<double> preimage_seeds(double x, u64 p);

/// The preimages (x + 2*pi*k) / p on either side of each zero 2*pi*t/n of F_n,
/// where 1/|F_n| and with it |F_np| is large; at most 2 phi(n) points.
std::vector<double> preimage_seeds(double x, u64 p, const SquarefreeOdd& n);

struct BinaryWitness {
  i64 a = 0;
  Turn point;
  double x = 0;
  double bound = 0;
  double measured = 0;
};

/// For primes 2 < p1 < p2: a with p1 | p2 + 2a, |a| < p1/2, the point
/// x = (1 + 1/p1 + (2a+1)/(p1 p2)) pi, the lower bound
/// 4 (p1 - 2) p2 / (pi^2 |2a+1|) and the measured |F_{p1 p2}(x)|.
BinaryWitness binary_witness(u64 p1, u64 p2);

struct FnpCheck {
  double lhs = 0;
  double rhs = 0;
};

/// Both sides of |f_np(x1)| = p |f_n(p x1)| / |F_n(x1)| at x1 = 2*pi*t1/(np).
FnpCheck check_fnp_identity(const SquarefreeOdd& n, u64 p, u64 t1);

}  // namespace cyclo
