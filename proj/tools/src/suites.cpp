#include "cyclo_cli/suites.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include "cyclo/circle.hpp"
#include "cyclo/construct.hpp"
#include "cyclo/cyclo_poly.hpp"
#include "cyclo/error.hpp"
#include "cyclo/report.hpp"

namespace cyclo::cli {
namespace {

std::string num(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

class Check {
 public:
  Check(std::string suite, std::string name) {
    r_.suite = std::move(suite);
    r_.name = std::move(name);
  }

  template <class Describe>
  void expect(bool ok, Describe&& describe) {
    ++r_.cases;
    if (!ok && r_.pass) {
      r_.pass = false;
      r_.counterexample = describe();
    }
  }

  CheckResult result() && { return std::move(r_); }

 private:
  CheckResult r_;
};

std::vector<SquarefreeOdd> squarefree_odd_upto(u64 limit) {
  std::vector<SquarefreeOdd> out;
  for (u64 n = 1; n <= limit; n += 2)
    if (mobius(n) != 0) out.push_back(parse_squarefree_odd(n));
  return out;
}

std::vector<u64> odd_primes_upto(u64 limit) {
  std::vector<u64> out;
  for (u64 p = 3; p <= limit; p += 2)
    if (is_prime(p)) out.push_back(p);
  return out;
}

double rel_diff(double a, double b) { return std::fabs(a - b) / std::max(1.0, std::fabs(b)); }

CheckResult check_circle_identity() {
  Check c("lemmas", "circle_identity");
  for (const auto& n : squarefree_odd_upto(255)) {
    const CycloPoly poly = phi_coefficients(n);
    for (int k = 0; k < 9; ++k) {
      const double x = 0.05 + 0.7 * k;
      const double lhs = std::fabs(eval_F(n, x));
      const double rhs = eval_phi_circle(poly, x) * (n.value() == 1 ? 0.5 : 1.0);
      c.expect(std::fabs(lhs - rhs) <= 1e-9 * std::max(1.0, rhs), [&] {
        return "n=" + std::to_string(n.value()) + " x=" + num(x) + " |F|=" + num(lhs) +
               " |Phi|=" + num(rhs);
      });
    }
  }
  return std::move(c).result();
}

CheckResult check_derivative() {
  Check c("lemmas", "derivative_closed_form");
  constexpr double h = 1e-6;
  for (const auto& n : squarefree_odd_upto(105)) {
    const u64 nv = n.value();
    if (nv == 1) continue;
    for (u64 t = 1; t <= nv / 2; ++t) {
      if (gcd(t, nv) != 1) continue;
      const double x0 = 2 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(nv);
      const double fd = std::fabs(eval_F(n, x0 + h) - eval_F(n, x0 - h)) / (2 * h);
      const double closed = derivative_at_zero(n, t);
      c.expect(std::fabs(fd - closed) <= 1e-5 * closed, [&] {
        return "n=" + std::to_string(nv) + " t0=" + std::to_string(t) + " closed=" + num(closed) +
               " difference quotient=" + num(fd);
      });
    }
  }
  return std::move(c).result();
}

CheckResult check_fnp() {
  Check c("lemmas", "fnp_identity");
  for (u64 nv : {3u, 5u, 15u, 21u, 35u, 105u}) {
    const auto n = parse_squarefree_odd(nv);
    for (u64 p : odd_primes_upto(60)) {
      if (nv % p == 0) continue;
      const u64 np = nv * p;
      for (u64 t1 = 1; t1 < np; t1 += 1 + np / 7) {
        if (gcd(t1, np) != 1) continue;
        const FnpCheck f = check_fnp_identity(n, p, t1);
        c.expect(std::fabs(f.lhs - f.rhs) <= 1e-9 * std::fabs(f.rhs), [&] {
          return "n=" + std::to_string(nv) + " p=" + std::to_string(p) +
                 " t1=" + std::to_string(t1) + " lhs=" + num(f.lhs) + " rhs=" + num(f.rhs);
        });
      }
    }
  }
  return std::move(c).result();
}

CheckResult check_dnp() {
  Check c("lemmas", "dnp_lower_bound");
  for (u64 nv : {3u, 5u, 7u, 15u, 21u, 35u}) {
    const auto n = parse_squarefree_odd(nv);
    const CircleProfile base = circle_profile(n);
    for (u64 p : odd_primes_upto(50)) {
      if (nv % p == 0) continue;
      const ZeroSlope dnp = compute_D(n.times(p));
      const double bound = static_cast<double>(p) * base.D / base.L;
      c.expect(dnp.D >= bound * (1 - 1e-9), [&] {
        return "n=" + std::to_string(nv) + " p=" + std::to_string(p) + " D_np=" + num(dnp.D) +
               " p*D_n/L_n=" + num(bound);
      });
    }
  }
  return std::move(c).result();
}

CheckResult check_prime_max() {
  Check c("lemmas", "prime_maximum");
  for (u64 p : odd_primes_upto(200)) {
    const CircleMax m = compute_L(SquarefreeOdd::from_primes({p}));
    c.expect(std::fabs(m.L - static_cast<double>(p)) <= 1e-9 * static_cast<double>(p),
             [&] { return "p=" + std::to_string(p) + " L=" + num(m.L); });
  }
  return std::move(c).result();
}

}  // namespace

std::vector<CheckResult> suite_lemmas() {
  return {check_circle_identity(), check_derivative(), check_fnp(), check_dnp(),
          check_prime_max()};
}

std::vector<CheckResult> suite_binary() {
  Check witness("binary", "witness_value");
  Check maximum("binary", "maximum_above_bound");
  const auto primes = odd_primes_upto(80);
  for (std::size_t i = 0; i < primes.size(); ++i) {
    for (std::size_t j = i + 1; j < primes.size(); ++j) {
      const u64 p1 = primes[i], p2 = primes[j];
      const BinaryWitness w = binary_witness(p1, p2);
      const auto label = "p1=" + std::to_string(p1) + " p2=" + std::to_string(p2);
      witness.expect(w.measured >= w.bound, [&] {
        return label + " measured=" + num(w.measured) + " bound=" + num(w.bound);
      });
      const double x[] = {w.x};
      const CircleMax m = compute_L(SquarefreeOdd::from_primes({p1, p2}), {}, x);
      maximum.expect(m.L >= w.bound,
                     [&] { return label + " L=" + num(m.L) + " bound=" + num(w.bound); });
    }
  }
  return {std::move(witness).result(), std::move(maximum).result()};
}

std::vector<CheckResult> suite_tower() {
  Check verdict("tower", "verdict");
  Check dn("tower", "dn_formula");
  Check targets("tower", "level_targets");
  const std::pair<int, const char*> runs[] = {{3, "const:1"}, {3, "affine:2,1"}, {4, "const:1"}};
  for (const auto& [omega, h] : runs) {
    const PrimeTower t = build_tower(omega, 0.5, HFunction::parse(h));
    const auto label = "omega=" + std::to_string(omega) + " h=" + h;
    verdict.expect(t.verdict, [&] { return label + " stop=" + t.stop_reason; });
    for (const auto& lvl : t.levels) {
      const auto where = label + " n=" + std::to_string(lvl.n().value());
      if (lvl.has_D)
        dn.expect(lvl.profile.D >= lvl.D_lower * (1 - 1e-9), [&] {
          return where + " D=" + num(lvl.profile.D) + " floor=" + num(lvl.D_lower);
        });
      targets.expect(lvl.pass, [&] {
        return where + " L=" + num(lvl.L()) + " target=" + num(lvl.target);
      });
    }
  }
  return {std::move(verdict).result(), std::move(dn).result(), std::move(targets).result()};
}

std::vector<CheckResult> suite_cache(const CircleCache& cache) {
  Check c("cache", "entries_recompute");
  std::vector<std::string> rejected;
  const auto entries = cache.entries(&rejected);
  for (const auto& r : rejected) c.expect(false, [&] { return "unreadable entry " + r; });
  for (const auto& e : entries) {
    if (e.tool_version != kToolVersion) continue;
    CircleConfig cfg;
    cfg.grid_mult = e.key.grid_mult;
    cfg.tolerance = e.key.tolerance;
    const auto label = "n=" + e.key.n + " grid_mult=" + std::to_string(e.key.grid_mult);
    try {
      const CircleProfile fresh = circle_profile(e.value.n, cfg);
      const bool same = std::to_string(fresh.n.value()) == e.key.n &&
                        rel_diff(e.value.L, fresh.L) <= 1e-12 &&
                        rel_diff(e.value.D, fresh.D) <= 1e-12 && e.value.t0 == fresh.t0;
      c.expect(same, [&] {
        return label + " cached L=" + num(e.value.L) + " D=" + num(e.value.D) +
               " t0=" + std::to_string(e.value.t0) + " recomputed L=" + num(fresh.L) +
               " D=" + num(fresh.D) + " t0=" + std::to_string(fresh.t0);
      });
    } catch (const Error& ex) {
      c.expect(false, [&] { return label + " " + ex.what(); });
    }
  }
  return {std::move(c).result()};
}

std::vector<CheckResult> run_suite(std::string_view suite, const CircleCache& cache) {
  std::vector<CheckResult> out;
  auto append = [&](std::vector<CheckResult> more) {
    for (auto& r : more) out.push_back(std::move(r));
  };
  const bool all = suite == "all";
  if (all || suite == "lemmas") append(suite_lemmas());
  if (all || suite == "binary") append(suite_binary());
  if (all || suite == "tower") append(suite_tower());
  if (all) append(suite_cache(cache));
  if (!all && suite != "lemmas" && suite != "binary" && suite != "tower")
    throw Error(ErrorCode::InvalidArgument, "unknown suite '" + std::string(suite) + "'");
  return out;
}

}  // namespace cyclo::cli
