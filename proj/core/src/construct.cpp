#include "cyclo/construct.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <string>

#include "cyclo/cyclo_poly.hpp"
#include "cyclo/error.hpp"

namespace cyclo {
namespace {

constexpr double kLogSlack = 1e-9;
// Largest h value for which p > h stays within the 64-bit prime search.
constexpr double kHCeiling = 9.0e18;

double parse_number(std::string_view s) {
  double v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end)
    throw Error(ErrorCode::InvalidArgument, "bad number '" + std::string(s) + "'");
  return v;
}

std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

u64 h_floor(const HFunction& h, double x) {
  const double v = h(x);
  if (!(v < kHCeiling))
    throw Error(ErrorCode::SearchExhausted,
                "h(" + format_number(x) + ") = " + format_number(v) + " leaves the 64-bit range");
  return static_cast<u64>(std::floor(std::max(v, 0.0)));
}

double log_of(const mpz_class& v) {
  long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, v.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * std::numbers::ln2;
}

// Unit r mod n closest to y; ties go to the smaller r.
i64 nearest_unit(double y, u64 n) {
  const i64 base = static_cast<i64>(std::floor(y));
  std::optional<i64> best;
  double best_dist = 0;
  for (i64 radius = 0;; ++radius) {
    for (i64 cand : {base - radius, base + 1 + radius}) {
      const u64 residue = static_cast<u64>(((cand % static_cast<i64>(n)) + static_cast<i64>(n)) %
                                           static_cast<i64>(n));
      if (gcd(residue, n) != 1) continue;
      const double dist = std::fabs(y - static_cast<double>(cand));
      if (!best || dist < best_dist || (dist == best_dist && cand < *best)) {
        best = cand;
        best_dist = dist;
      }
    }
    // every candidate still unexamined is at least `radius` away
    if (best && best_dist <= static_cast<double>(radius)) return *best;
  }
}

bool meets(double L, double target, double log_target, int omega) {
  if (omega >= 6) return std::log(L) > log_target + kLogSlack;
  return L > target;
}

double product_of_L(const PrimeTower& tower) {
  double prod = 1.0;
  for (const auto& lvl : tower.levels) prod *= lvl.L();
  return prod;
}

void fill_D(TowerLevel& lvl, const CircleConfig& cfg, bool allow_skip) {
  try {
    const ZeroSlope z = compute_D(lvl.n(), cfg);
    lvl.profile.D = z.D;
    lvl.profile.t0 = z.t0;
    lvl.has_D = true;
  } catch (const Error& e) {
    if (!allow_skip || e.code() != ErrorCode::ScanBudgetExceeded) throw;
    lvl.has_D = false;
  }
}

}  // namespace

HFunction::HFunction(Kind kind, std::vector<double> params)
    : kind_(kind), params_(std::move(params)) {
  for (double v : params_)
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "h parameters must be finite");
  switch (kind_) {
    case Kind::Constant:
      if (!(params_[0] > 0)) throw Error(ErrorCode::InvalidArgument, "const:c needs c > 0");
      break;
    case Kind::Affine:
      if (params_[0] < 0 || params_[1] < 0 || (params_[0] == 0 && params_[1] == 0))
        throw Error(ErrorCode::InvalidArgument, "affine:a,b needs a, b >= 0, not both zero");
      break;
    case Kind::Power:
      break;
    case Kind::Exponential:
      if (!(params_[0] > 0)) throw Error(ErrorCode::InvalidArgument, "exp:c needs c > 0");
      break;
  }
}

HFunction HFunction::constant(double c) { return HFunction(Kind::Constant, {c}); }
HFunction HFunction::affine(double a, double b) { return HFunction(Kind::Affine, {a, b}); }
HFunction HFunction::power(double k) { return HFunction(Kind::Power, {k}); }
HFunction HFunction::exponential(double c) { return HFunction(Kind::Exponential, {c}); }

HFunction HFunction::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw Error(ErrorCode::InvalidArgument, "h must look like kind:params, got '" + std::string(text) + "'");
  const auto kind = text.substr(0, colon);
  const auto args = text.substr(colon + 1);
  if (kind == "affine") {
    const auto comma = args.find(',');
    if (comma == std::string_view::npos)
      throw Error(ErrorCode::InvalidArgument, "affine needs two parameters a,b");
    return affine(parse_number(args.substr(0, comma)), parse_number(args.substr(comma + 1)));
  }
  if (kind == "const") return constant(parse_number(args));
  if (kind == "pow") return power(parse_number(args));
  if (kind == "exp") return exponential(parse_number(args));
  throw Error(ErrorCode::InvalidArgument, "unknown h kind '" + std::string(kind) + "'");
}

double HFunction::operator()(double x) const {
  switch (kind_) {
    case Kind::Constant: return params_[0];
    case Kind::Affine: return params_[0] * x + params_[1];
    case Kind::Power: return std::pow(x, params_[0]);
    case Kind::Exponential: return std::pow(params_[0], x);
  }
  return params_[0];
}

std::string_view HFunction::kind_name() const noexcept {
  switch (kind_) {
    case Kind::Constant: return "const";
    case Kind::Affine: return "affine";
    case Kind::Power: return "pow";
    case Kind::Exponential: return "exp";
  }
  return "const";
}

std::string HFunction::to_string() const {
  std::string out(kind_name());
  out += ':';
  for (std::size_t i = 0; i < params_.size(); ++i) {
    if (i) out += ',';
    out += format_number(params_[i]);
  }
  return out;
}

BinarySeed binary_seed(const HFunction& h, int omega_target, u64 search_budget) {
  BinarySeed s;
  // h(1) is raised to omega_target so that p1 > omega holds at every level
  s.p1 = next_odd_prime_above(std::max<u64>(h_floor(h, 1.0), static_cast<u64>(omega_target)));
  const u64 lower = std::max(h_floor(h, static_cast<double>(s.p1)), s.p1);
  s.p2 = find_prime_in_class({2 % s.p1, s.p1}, lower, search_budget);
  s.witness = binary_witness(s.p1, s.p2);
  return s;
}

double level_log_target(int level, int omega, double epsilon, const SquarefreeOdd& n) {
  const BoundConstant c = c_constant(level);
  return static_cast<double>(level) / omega * std::log1p(-epsilon) +
         c.log2_value * std::numbers::ln2 + std::log(static_cast<double>(n.value())) +
         log_of(m_bound(n));
}

void next_level(PrimeTower& tower, const TowerConfig& cfg) {
  if (tower.levels.size() < 2)
    throw Error(ErrorCode::InvalidArgument, "next_level needs the binary seed levels");
  const TowerLevel top = tower.levels.back();
  if (!top.has_D)
    throw Error(ErrorCode::InvalidArgument, "level without D cannot be extended");
  const SquarefreeOdd& n = top.n();
  const u64 nv = n.value();
  const int order = n.omega();
  const int next_index = top.index + 1;

  const double y = static_cast<double>(nv) * top.profile.x_M / (2 * std::numbers::pi);
  const i64 r = nearest_unit(y, nv);
  const double b = std::fabs(y - static_cast<double>(r));
  // among any omega + 1 consecutive integers one is a unit once p1 > omega
  if (n.primes()[0] > static_cast<u64>(order) && b > (order + 1) / 2.0 + 1e-9)
    throw Error(ErrorCode::VerificationFailed,
                "b = " + std::to_string(b) + " exceeds (omega+1)/2 at n = " + std::to_string(nv));

  const u64 r_mod = static_cast<u64>(((r % static_cast<i64>(nv)) + static_cast<i64>(nv)) %
                                     static_cast<i64>(nv));
  const ResidueClass cls{mul_mod(r_mod, mod_inverse(static_cast<i64>(top.profile.t0), nv), nv), nv};

  u64 lower = std::max(h_floor(tower.h, static_cast<double>(nv)), top.p);
  std::optional<TowerLevel> best;
  double best_margin = -std::numeric_limits<double>::infinity();
  const double prior_L = product_of_L(tower);

  for (u64 tried = 1; tried <= cfg.candidate_budget; ++tried) {
    const u64 p = find_prime_in_class(cls, lower, cfg.search_budget);
    lower = p;
    const SquarefreeOdd np = n.times(p);
    check_grid_budget(np, cfg.circle);
    const auto seeds = preimage_seeds(top.profile.x_M, p, n);
    const CircleMax cm = compute_L(np, cfg.circle, seeds);

    TowerLevel lvl;
    lvl.index = next_index;
    lvl.p = p;
    lvl.profile = CircleProfile{np, cm.L, cm.x_M, 0, 0, cfg.circle.grid_mult, cfg.circle.refine};
    lvl.residue_class = cls;
    lvl.r = r;
    lvl.b = b;
    lvl.log_target = level_log_target(next_index, tower.omega, tower.epsilon, np);
    lvl.target = std::exp(lvl.log_target);
    if (tower.omega < 6) {
      lvl.target = std::pow(1 - tower.epsilon, static_cast<double>(next_index) / tower.omega) *
                   c_constant(next_index).value * static_cast<double>(np.value()) *
                   m_bound(np).get_d();
    }
    lvl.D_lower = 0.5 * static_cast<double>(np.value()) / prior_L;
    lvl.candidates_tried = tried;
    lvl.pass = meets(cm.L, lvl.target, lvl.log_target, tower.omega);

    const double margin = std::log(cm.L) - lvl.log_target;
    if (!best || margin > best_margin) {
      best = lvl;
      best_margin = margin;
    }
    if (lvl.pass) {
      best = lvl;
      break;
    }
  }
  best->candidates_tried = std::min<u64>(cfg.candidate_budget, best->candidates_tried);
  const bool final_level = next_index == tower.omega;
  fill_D(*best, cfg.circle, final_level || !best->pass);
  tower.levels.push_back(std::move(*best));
}

PrimeTower build_tower(int omega, double epsilon, const HFunction& h, const TowerConfig& cfg) {
  if (omega < 3 || omega > 15)
    throw Error(ErrorCode::InvalidArgument, "omega must lie in [3, 15]");
  if (!(epsilon > 0 && epsilon < 1))
    throw Error(ErrorCode::InvalidArgument, "epsilon must lie in (0, 1)");

  PrimeTower tower;
  tower.omega = omega;
  tower.epsilon = epsilon;
  tower.h = h;

  const BinarySeed seed = binary_seed(h, omega, cfg.search_budget);
  tower.witness = seed.witness;

  TowerLevel first;
  first.index = 1;
  first.p = seed.p1;
  const SquarefreeOdd n1 = SquarefreeOdd::from_primes({seed.p1});
  const CircleMax m1 = compute_L(n1, cfg.circle);
  first.profile = CircleProfile{n1, m1.L, m1.x_M, 0, 0, cfg.circle.grid_mult, cfg.circle.refine};
  fill_D(first, cfg.circle, false);
  first.target = static_cast<double>(seed.p1);  // L_p = p
  first.log_target = std::log(first.target);
  first.D_lower = 0.5 * static_cast<double>(seed.p1);
  first.pass = first.L() >= first.target * (1 - cfg.circle.tolerance);
  tower.levels.push_back(first);

  TowerLevel second;
  second.index = 2;
  second.p = seed.p2;
  const SquarefreeOdd n2 = n1.times(seed.p2);
  check_grid_budget(n2, cfg.circle);
  auto seeds = preimage_seeds(m1.x_M, seed.p2, n1);
  seeds.push_back(seed.witness.x);
  const CircleMax m2 = compute_L(n2, cfg.circle, seeds);
  second.profile = CircleProfile{n2, m2.L, m2.x_M, 0, 0, cfg.circle.grid_mult, cfg.circle.refine};
  second.residue_class = ResidueClass{2 % seed.p1, seed.p1};
  second.target = seed.witness.bound;
  second.log_target = std::log(second.target);
  second.D_lower = 0.5 * static_cast<double>(n2.value()) / first.L();
  second.pass = m2.L >= seed.witness.bound;
  fill_D(second, cfg.circle, false);
  tower.levels.push_back(second);

  while (static_cast<int>(tower.levels.size()) < omega) {
    try {
      next_level(tower, cfg);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::SearchExhausted && e.code() != ErrorCode::TooLarge) throw;
      tower.stop_reason = e.what();
      break;
    }
    if (!tower.levels.back().pass) {
      tower.stop_reason = "no candidate prime met the level " +
                          std::to_string(tower.levels.back().index) + " target";
      break;
    }
  }
  tower.complete = static_cast<int>(tower.levels.size()) == omega;
  tower.verdict = tower.complete && std::all_of(tower.levels.begin(), tower.levels.end(),
                                                [](const TowerLevel& l) { return l.pass; });
  return tower;
}

mpz_class certified_height_lower(const PrimeTower& tower) {
  const double q = tower.levels.back().L() / static_cast<double>(tower.n().value());
  mpz_class out;
  mpz_set_d(out.get_mpz_t(), std::floor(q));
  return out;
}

std::vector<BeiterScanRow> scan_ratios(int omega, u64 n_max, u64 degree_cap) {
  if (omega < 1) throw Error(ErrorCode::InvalidArgument, "omega must be positive");
  // odd primes up to n_max / (product of the omega-1 smallest odd primes)
  std::vector<u64> primes;
  {
    const u64 limit = n_max / 3 + 3;
    std::vector<bool> composite(limit + 1, false);
    for (u64 i = 3; i <= limit; i += 2) {
      if (composite[i]) continue;
      primes.push_back(i);
      for (u64 j = i * i; j <= limit; j += 2 * i) composite[j] = true;
    }
  }
  std::vector<BeiterScanRow> rows;
  std::vector<u64> chosen;
  auto visit = [&](auto&& self, std::size_t from, u64 product) -> void {
    if (static_cast<int>(chosen.size()) == omega) {
      BeiterScanRow row;
      row.n = SquarefreeOdd::from_primes(chosen);
      row.A = height_report(row.n, degree_cap).A;
      row.M = m_bound(row.n);
      row.ratio = mpq_class(row.A, row.M).get_d();
      rows.push_back(std::move(row));
      return;
    }
    for (std::size_t i = from; i < primes.size(); ++i) {
      if (primes[i] > n_max / product) break;
      chosen.push_back(primes[i]);
      self(self, i + 1, product * primes[i]);
      chosen.pop_back();
    }
  };
  visit(visit, 0, 1);
  std::sort(rows.begin(), rows.end(), [](const BeiterScanRow& a, const BeiterScanRow& b) {
    const int c = cmp(a.A * b.M, b.A * a.M);
    if (c != 0) return c > 0;
    return a.n.value() < b.n.value();
  });
  return rows;
}

}  // namespace cyclo
