#pragma once

// Inductive construction of n = p1 p2 ... p_omega with a large maximum L_n of
// |Phi_n| on the unit circle, hence a large height A_n >= L_n / n.
//
// The seed pair has p2 = 2 (mod p1). Each later prime is taken from the
// residue class p = r * t0^-1 (mod n), where x_M maximizes |F_n|, 2*pi*t0/n is
// the zero of F_n with the smallest slope D_n, and r is the unit closest to
// n x_M / (2 pi). Such p pull the maximum of |F_n| back onto a point next to
// that zero, which divides L_n by a quantity of order D_n / (n p).

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cyclo/circle.hpp"
#include "cyclo/constants.hpp"
#include "cyclo/numtheory.hpp"

namespace cyclo {

/// Growth function for the condition p_i > h(p_1 ... p_{i-1}).
class HFunction {
 public:
  enum class Kind { Constant, Affine, Power, Exponential };

  static HFunction constant(double c);
  static HFunction affine(double a, double b);
  static HFunction power(double k);
  static HFunction exponential(double c);

  /// "const:c" | "affine:a,b" | "pow:k" | "exp:c"
  static HFunction parse(std::string_view text);

  double operator()(double x) const;

  Kind kind() const noexcept { return kind_; }
  std::string_view kind_name() const noexcept;
  const std::vector<double>& params() const noexcept { return params_; }
  std::string to_string() const;

  friend bool operator==(const HFunction&, const HFunction&) = default;

 private:
  HFunction(Kind kind, std::vector<double> params);

  Kind kind_ = Kind::Constant;
  std::vector<double> params_{1.0};
};

struct TowerLevel {
  int index = 0;
  u64 p = 0;
  CircleProfile profile;
  /// false when D was not computed (the final level may exceed the scan budget)
  bool has_D = true;
  /// the class p was drawn from (2 mod p1 for the seed, r/t0 mod n for i >= 3)
  std::optional<ResidueClass> residue_class;
  std::optional<i64> r;
  std::optional<double> b;
  double target = 0;
  double log_target = 0;
  /// (n/2) / (L_{n_1} ... L_{n_{i-1}}), the guaranteed floor for D
  double D_lower = 0;
  u64 candidates_tried = 1;
  bool pass = false;

  const SquarefreeOdd& n() const noexcept { return profile.n; }
  double L() const noexcept { return profile.L; }
};

struct TowerConfig {
  CircleConfig circle;
  /// primes tried per level before giving up
  u64 candidate_budget = 64;
  /// progression terms examined per prime search
  u64 search_budget = kDefaultSearchBudget;
};

struct PrimeTower {
  int omega = 0;
  double epsilon = 0;
  HFunction h = HFunction::constant(1);
  std::vector<TowerLevel> levels;
  std::optional<BinaryWitness> witness;
  bool verdict = false;
  /// false when a level ran out of candidates and the tower stopped early
  bool complete = false;
  /// why construction stopped before omega levels, empty otherwise
  std::string stop_reason;

  const SquarefreeOdd& n() const { return levels.back().n(); }
};

struct BinarySeed {
  u64 p1 = 0;
  u64 p2 = 0;
  BinaryWitness witness;
};

/// p1 = smallest odd prime above max(h(1), omega_target), p2 = smallest prime
/// = 2 (mod p1) above max(h(p1), p1).
BinarySeed binary_seed(const HFunction& h, int omega_target,
                       u64 search_budget = kDefaultSearchBudget);

/// Target (1-eps)^(i/omega) c_i n_i M_{n_i} for level i >= 3, as a log.
double level_log_target(int level, int omega, double epsilon, const SquarefreeOdd& n);

/// Appends level i+1 to a tower with i >= 2 levels. The appended level may
/// fail its target when the candidate budget runs out.
void next_level(PrimeTower& tower, const TowerConfig& cfg = {});

/// Seed levels, then next_level until omega levels or a failure. Running out
/// of primes (SearchExhausted, or n leaving 64 bits) ends the tower early with
/// stop_reason set instead of throwing.
PrimeTower build_tower(int omega, double epsilon, const HFunction& h,
                       const TowerConfig& cfg = {});

/// floor(L_n / n), a lower bound for the height of Phi_n.
mpz_class certified_height_lower(const PrimeTower& tower);

struct BeiterScanRow {
  SquarefreeOdd n;
  mpz_class A;
  mpz_class M;
  double ratio = 0;
};

/// All squarefree odd n <= n_max with omega(n) = omega, by A_n/M_n descending
/// (ties by n ascending).
std::vector<BeiterScanRow> scan_ratios(int omega, u64 n_max,
                                       u64 degree_cap = 1'000'000);

}  // namespace cyclo
