#include "cyclo/circle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "cyclo/error.hpp"
#include "cyclo/parallel.hpp"
#include "cyclo/trig.hpp"

namespace cyclo {
namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;
constexpr u64 kScanChunk = u64{1} << 15;

// Folds sine factors into F_n. A factor that vanishes exactly is replaced by
// its first-order term (-1)^k * (d/2) * eps; the eps powers cancel between
// numerator and denominator wherever F_n is finite, and a surplus in the
// numerator is a genuine zero.
class SineProduct {
 public:
  void add(const ExactSine& s, u64 d, int mu) {
    double f = s.value;
    if (s.zero) {
      eps_power_ += mu;
      f = s.parity ? -static_cast<double>(d) : static_cast<double>(d);
    }
    if (mu > 0)
      num_ *= f;
    else
      den_ *= f;
  }

  double value() const {
    if (eps_power_ > 0) return 0.0;
    if (eps_power_ < 0)
      throw Error(ErrorCode::VerificationFailed, "unbounded sine product");
    return num_ / den_;
  }

 private:
  double num_ = 1.0;
  double den_ = 1.0;
  int eps_power_ = 0;
};

double canonical_angle(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0) r += kTwoPi;
  if (r > std::numbers::pi) r = kTwoPi - r;  // |F_n| is symmetric about pi
  return r;
}

struct Candidate {
  double value;
  u64 index;  // grid index or seed index
};

bool better(const Candidate& a, const Candidate& b) {
  if (a.value != b.value) return a.value > b.value;
  return a.index < b.index;
}

struct TopK {
  std::vector<Candidate> items;

  void offer(Candidate c, std::size_t k) {
    if (items.size() == k && !better(c, items.back())) return;
    auto pos = std::upper_bound(items.begin(), items.end(), c, better);
    items.insert(pos, c);
    if (items.size() > k) items.pop_back();
  }
};

struct Refined {
  double x;
  double value;
};

Refined golden_max(const SquarefreeOdd& n, double a, double b, const CircleConfig& cfg) {
  constexpr double kInvPhi = 0.6180339887498948482;
  auto g = [&](double x) { return std::fabs(eval_F(n, x)); };
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = g(c), fd = g(d);
  Refined best = fc >= fd ? Refined{c, fc} : Refined{d, fd};
  for (int it = 0; it < cfg.max_refine_iters; ++it) {
    if (b - a <= cfg.tolerance * std::max(1.0, std::fabs(c))) break;
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = g(c);
      if (fc > best.value) best = {c, fc};
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = g(d);
      if (fd > best.value) best = {d, fd};
    }
  }
  return best;
}

// Scans |F_n| at x_j = 2*pi*j/N for j in [lo, hi) and reports local maxima.
// Sines come from the phase table by tracking d*j mod 2N incrementally;
// points where some factor vanishes exactly go through the exact path.
TopK scan_grid_chunk(const SquarefreeOdd& n, const std::vector<SignedDivisor>& divs,
                     const PhaseTable& table, u64 lo, u64 hi, std::size_t k) {
  const u64 N = table.modulus();
  const u64 twoN = 2 * N;
  const std::size_t m = divs.size();
  std::vector<u64> r(m), step(m);
  std::vector<int> mu(m);
  for (std::size_t i = 0; i < m; ++i) {
    step[i] = divs[i].d % twoN;
    __int128 start = static_cast<__int128>(divs[i].d) * (static_cast<__int128>(lo) - 1);
    start %= static_cast<__int128>(twoN);
    if (start < 0) start += twoN;
    r[i] = static_cast<u64>(start);
    mu[i] = divs[i].mu;
  }

  TopK top;
  double before = 0, here = 0;
  for (i64 j = static_cast<i64>(lo) - 1; j <= static_cast<i64>(hi); ++j) {
    bool exceptional = false;
    double num = 1.0, den = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
      const u64 ri = r[i];
      exceptional |= (ri == 0) | (ri == N);
      const double s = table.sin_pi(ri);
      if (mu[i] > 0)
        num *= s;
      else
        den *= s;
      u64 nr = ri + step[i];
      r[i] = nr >= twoN ? nr - twoN : nr;
    }
    const double v = exceptional ? std::fabs(eval_F(n, Turn{j, N})) : std::fabs(num / den);
    const i64 centre = j - 1;
    if (centre >= static_cast<i64>(lo) && here >= before && here >= v)
      top.offer({here, static_cast<u64>(centre)}, k);
    before = here;
    here = v;
  }
  return top;
}

}  // namespace

double Turn::radians() const noexcept {
  return kTwoPi * (static_cast<double>(num) / static_cast<double>(den));
}

double eval_F(const SquarefreeOdd& n, double x) {
  SineProduct prod;
  for (const auto& [d, mu] : divisors(n)) prod.add(sin_half_multiple(d, x), d, mu);
  return prod.value();
}

double eval_F(const SquarefreeOdd& n, Turn x) {
  // sin(d * x / 2) = sin(pi * d * num / den)
  SineProduct prod;
  for (const auto& [d, mu] : divisors(n))
    prod.add(sin_pi_rational(static_cast<__int128>(d) * x.num, x.den), d, mu);
  return prod.value();
}

double eval_phi_circle(const CycloPoly& poly, double x) {
  // Neumaier summation of c_k e^{ikx}; k*x is reduced mod 2*pi in
  // double-double so high powers keep their phase.
  constexpr double kTwoPiHi = 6.283185307179586232e+00;
  constexpr double kTwoPiLo = 2.449293598294706414e-16;
  double re = 0, re_c = 0, im = 0, im_c = 0;
  auto accumulate = [](double& sum, double& comp, double term) {
    const double t = sum + term;
    if (std::fabs(sum) >= std::fabs(term))
      comp += (sum - t) + term;
    else
      comp += (term - t) + sum;
    sum = t;
  };
  for (std::size_t k = 0; k < poly.size(); ++k) {
    const double c = poly.coeff_as_double(k);
    if (c == 0) continue;
    const double kk = static_cast<double>(k);
    const double p = kk * x;
    const double e = std::fma(kk, x, -p);
    const double q = std::nearbyint(p / kTwoPi);
    double r = std::fma(-q, kTwoPiHi, p);
    r = std::fma(-q, kTwoPiLo, r);
    r += e;
    accumulate(re, re_c, c * std::cos(r));
    accumulate(im, im_c, c * std::sin(r));
  }
  return std::hypot(re + re_c, im + im_c);
}

double derivative_at_zero(const SquarefreeOdd& n, u64 t0) {
  const u64 v = n.value();
  if (v == 1) {
    if (t0 != 0) throw Error(ErrorCode::InvalidZeroIndex, "F_1 vanishes only at t0 = 0");
    return 0.5;
  }
  if (t0 == 0 || t0 >= v || gcd(t0, v) != 1)
    throw Error(ErrorCode::InvalidZeroIndex,
                "t0 = " + std::to_string(t0) + " is not a unit mod " + std::to_string(v));
  double num = 1.0, den = 1.0;
  for (const auto& [d, mu] : divisors(n)) {
    if (d == v) continue;
    // proper divisors never make d*t0/n an integer, so no factor vanishes
    const double s = std::fabs(sin_pi_rational(static_cast<__int128>(d) * t0, v).value);
    if (mu > 0)
      num *= s;
    else
      den *= s;
  }
  return 0.5 * static_cast<double>(v) * num / den;
}

ZeroSlope compute_D(const SquarefreeOdd& n, const CircleConfig& cfg) {
  const u64 v = n.value();
  if (v == 1) return {0.5, 0};
  if (v > cfg.scan_budget)
    throw Error(ErrorCode::ScanBudgetExceeded,
                "zero scan of n = " + std::to_string(v) + " exceeds the budget " +
                    std::to_string(cfg.scan_budget));
  const auto ps = n.primes();
  const auto divs = divisors(n);
  // |f_n(2*pi - x)| = |f_n(x)|, so t <= n/2 suffices
  const u64 last = v / 2;
  auto scan = [&](u64 lo, u64 hi) {
    ZeroSlope best{std::numeric_limits<double>::infinity(), 0};
    for (u64 t = lo; t < hi; ++t) {
      bool unit = true;
      for (u64 p : ps) unit &= (t % p != 0);
      if (!unit) continue;
      double num = 1.0, den = 1.0;
      for (const auto& [d, mu] : divs) {
        if (d == v) continue;
        const double s = std::fabs(sin_pi_rational(static_cast<__int128>(d) * t, v).value);
        if (mu > 0)
          num *= s;
        else
          den *= s;
      }
      const double slope = 0.5 * static_cast<double>(v) * num / den;
      if (slope < best.D) best = {slope, t};
    }
    return best;
  };
  return chunked_reduce(
      1, last + 1, kScanChunk, ZeroSlope{std::numeric_limits<double>::infinity(), 0}, scan,
      [](ZeroSlope acc, ZeroSlope c) { return c.D < acc.D ? c : acc; });
}

void check_grid_budget(const SquarefreeOdd& n, const CircleConfig& cfg) {
  if (cfg.grid_mult < 4)
    throw Error(ErrorCode::InvalidArgument, "grid_mult must be at least 4");
  u64 N;
  if (__builtin_mul_overflow(n.totient(), static_cast<u64>(cfg.grid_mult), &N) ||
      N / 2 + 1 > cfg.eval_cap)
    throw Error(ErrorCode::BudgetExceeded,
                "grid for n = " + std::to_string(n.value()) + " exceeds the evaluation cap " +
                    std::to_string(cfg.eval_cap));
}

CircleMax compute_L(const SquarefreeOdd& n, const CircleConfig& cfg,
                    std::span<const double> seeds) {
  check_grid_budget(n, cfg);
  const u64 N = n.totient() * static_cast<u64>(cfg.grid_mult);

  const auto divs = divisors(n);
  const std::size_t k = static_cast<std::size_t>(std::max(1, cfg.candidates));
  const u64 last = N / 2;  // x in [0, pi]
  const PhaseTable table(N);
  const TopK grid = chunked_reduce(
      0, last + 1, kScanChunk, TopK{},
      [&](u64 lo, u64 hi) { return scan_grid_chunk(n, divs, table, lo, hi, k); },
      [k](TopK acc, TopK c) {
        for (const auto& item : c.items) acc.offer(item, k);
        return acc;
      });

  const double h = kTwoPi / static_cast<double>(N);
  CircleMax best{-1.0, 0.0, false};
  auto consider = [&](double x, double value, bool refined) {
    x = canonical_angle(x);
    const double tol = cfg.tolerance * std::max(1.0, best.L);
    if (value > best.L + tol || (value >= best.L - tol && x < best.x_M))
      best = {value, x, refined};
  };
  auto refine_around = [&](double x, double value) {
    consider(x, value, false);
    if (!cfg.refine) return;
    const Refined r = golden_max(n, std::max(0.0, x - h), x + h, cfg);
    if (r.value > value) consider(r.x, r.value, true);
  };

  for (const auto& c : grid.items) {
    const Turn t{static_cast<i64>(c.index), N};
    refine_around(t.radians(), std::fabs(eval_F(n, t)));
  }

  if (!seeds.empty()) {
    std::vector<double> xs(seeds.size());
    for (std::size_t i = 0; i < seeds.size(); ++i) xs[i] = canonical_angle(seeds[i]);
    TopK top;
    for (std::size_t i = 0; i < xs.size(); ++i)
      top.offer({std::fabs(eval_F(n, xs[i])), i}, k);
    for (const auto& c : top.items) refine_around(xs[c.index], c.value);
  }
  return best;
}

CircleProfile circle_profile(const SquarefreeOdd& n, const CircleConfig& cfg,
                             std::span<const double> seeds) {
  const CircleMax m = compute_L(n, cfg, seeds);
  const ZeroSlope z = compute_D(n, cfg);
  return CircleProfile{n, m.L, m.x_M, z.D, z.t0, cfg.grid_mult, cfg.refine};
}

std::vector<double> preimage_seeds(double x, u64 p) {
  std::vector<double> out(p);
  for (u64 k = 0; k < p; ++k)
    out[k] = (x + kTwoPi * static_cast<double>(k)) / static_cast<double>(p);
  return out;
}

std::vector<double> preimage_seeds(double x, u64 p, const SquarefreeOdd& n) {
  const u64 nv = n.value();
  const long double shift = static_cast<long double>(x) / (2 * std::numbers::pi_v<long double>);
  std::vector<double> out;
  out.reserve(2 * n.totient());
  for (u64 t = 0; t < nv; ++t) {
    if (gcd(t, nv) != 1) continue;
    // (x + 2 pi k) / p = 2 pi t / n  at  k = p t / n - x / (2 pi)
    const long double c = static_cast<long double>(p) * t / nv - shift;
    const i64 k0 = static_cast<i64>(std::floor(c));
    for (i64 k : {k0, k0 + 1}) {
      const i64 km = ((k % static_cast<i64>(p)) + static_cast<i64>(p)) % static_cast<i64>(p);
      out.push_back((x + kTwoPi * static_cast<double>(km)) / static_cast<double>(p));
    }
  }
  return out;
}

BinaryWitness binary_witness(u64 p1, u64 p2) {
  if (!(2 < p1 && p1 < p2) || !is_prime(p1) || !is_prime(p2))
    throw Error(ErrorCode::InvalidArgument, "binary witness needs primes 2 < p1 < p2");
  BinaryWitness w;
  // 2a = -p2 (mod p1), representative with |a| < p1/2
  const i64 sp1 = static_cast<i64>(p1);
  i64 a = static_cast<i64>(mul_mod(p1 - p2 % p1, mod_inverse(2, p1), p1));
  if (2 * a > sp1) a -= sp1;
  w.a = a;
  // x = pi (p1 p2 + p2 + 2a + 1) / (p1 p2) = 2 pi * num / (2 p1 p2)
  const u64 n = p1 * p2;
  w.point = Turn{static_cast<i64>(n + p2) + 2 * a + 1, 2 * n};
  w.x = w.point.radians();
  const double pi2 = std::numbers::pi * std::numbers::pi;
  w.bound = 4.0 * static_cast<double>(p1 - 2) * static_cast<double>(p2) /
            (pi2 * static_cast<double>(std::llabs(2 * a + 1)));
  w.measured = std::fabs(eval_F(SquarefreeOdd::from_primes({p1, p2}), w.point));
  return w;
}

FnpCheck check_fnp_identity(const SquarefreeOdd& n, u64 p, u64 t1) {
  if (!is_prime(p) || p == 2 || n.value() % p == 0)
    throw Error(ErrorCode::InvalidArgument, "p must be an odd prime not dividing n");
  const SquarefreeOdd np = n.times(p);
  if (t1 == 0 || t1 >= np.value() || gcd(t1, np.value()) != 1)
    throw Error(ErrorCode::InvalidZeroIndex,
                "t1 = " + std::to_string(t1) + " is not a unit mod " + std::to_string(np.value()));
  FnpCheck c;
  c.lhs = derivative_at_zero(np, t1);
  // p * x1 = 2*pi*t1/n is a zero of F_n
  const double slope_n = derivative_at_zero(n, t1 % n.value());
  const double at_x1 = std::fabs(eval_F(n, Turn{static_cast<i64>(t1), np.value()}));
  c.rhs = static_cast<double>(p) * slope_n / at_x1;
  return c;
}

}  // namespace cyclo
