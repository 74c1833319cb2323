#include "cyclo_cli/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "cyclo/circle.hpp"
#include "cyclo/construct.hpp"
#include "cyclo/cyclo_poly.hpp"
#include "cyclo/error.hpp"
#include "cyclo/report.hpp"
#include "cyclo_cli/cache.hpp"
#include "cyclo_cli/suites.hpp"

namespace cyclo::cli {
namespace {

std::string shortest(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegreeCapExceeded:
    case ErrorCode::ScanBudgetExceeded:
    case ErrorCode::BudgetExceeded:
      return kBudget;
    case ErrorCode::SearchExhausted:
      return kSearchExhausted;
    case ErrorCode::VerificationFailed:
      return kVerificationFailed;
    default:
      return kDomain;
  }
}

void emit_error(std::ostream& err, std::string_view code, std::string_view message) {
  Json j;
  j["error"] = code;
  j["message"] = message;
  err << j.dump() << '\n';
}

struct CoeffsArgs {
  u64 n = 0;
  bool emit = false;
  std::string format = "json";
};

int cmd_coeffs(const CoeffsArgs& a, std::ostream& out) {
  const auto n = parse_squarefree_odd(a.n);
  const CycloPoly poly = phi_coefficients(n);
  const HeightReport h = height_report(poly);
  const mpz_class M = m_bound(n);
  if (a.format == "csv") {
    out << "n,A,S,degree,M,ratio\n"
        << a.n << ',' << h.A.get_str() << ',' << h.S.get_str() << ',' << h.degree << ','
        << M.get_str() << ',' << shortest(mpq_class(h.A, M).get_d()) << '\n';
    if (a.emit) {
      out << "\nindex,coefficient\n";
      for (std::size_t i = 0; i < poly.size(); ++i) out << i << ',' << poly.coeff(i).get_str() << '\n';
    }
    return kOk;
  }
  Json j = height_json(h, M);
  if (a.emit) j["coefficients"] = to_json(poly);
  out << j.dump(2) << '\n';
  return kOk;
}

struct CircleArgs {
  u64 n = 0;
  int grid_mult = 16;
  std::vector<double> seeds;
  bool no_cache = false;
};

int cmd_circle(const CircleArgs& a, std::ostream& out) {
  const auto n = parse_squarefree_odd(a.n);
  CircleConfig cfg;
  cfg.grid_mult = a.grid_mult;
  const bool use_cache = !a.no_cache && a.seeds.empty();
  const CacheKey key{std::to_string(a.n), cfg.grid_mult, cfg.tolerance};
  std::optional<CircleCache> cache;
  if (use_cache) {
    cache.emplace(default_cache_dir());
    if (auto hit = cache->lookup(key)) {
      out << to_json(*hit).dump(2) << '\n';
      return kOk;
    }
  }
  const CircleProfile p = circle_profile(n, cfg, a.seeds);
  if (use_cache) cache->store(key, p);
  out << to_json(p).dump(2) << '\n';
  return kOk;
}

struct ConstructArgs {
  int omega = 3;
  double epsilon = 0.5;
  std::string h = "const:1";
  u64 budget = TowerConfig{}.candidate_budget;
  std::string out_path;
};

int cmd_construct(const ConstructArgs& a, std::ostream& out) {
  TowerConfig cfg;
  cfg.candidate_budget = a.budget;
  const PrimeTower t = build_tower(a.omega, a.epsilon, HFunction::parse(a.h), cfg);
  const std::string text = to_json(t).dump(2) + "\n";
  if (!a.out_path.empty()) {
    std::ofstream f(a.out_path, std::ios::trunc);
    f << text;
    if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + a.out_path);
  }
  out << text;
  return t.verdict ? kOk : kSearchExhausted;
}

struct ScanArgs {
  int omega = 3;
  u64 max_n = 10000;
  std::size_t top = 0;
};

int cmd_scan(const ScanArgs& a, std::ostream& out) {
  auto rows = scan_ratios(a.omega, a.max_n);
  if (a.top > 0 && rows.size() > a.top) rows.resize(a.top);
  out << "n,A,M,ratio\n";
  for (const auto& r : rows)
    out << r.n.value() << ',' << r.A.get_str() << ',' << r.M.get_str() << ',' << shortest(r.ratio)
        << '\n';
  return kOk;
}

int cmd_verify(const std::string& suite, std::ostream& out) {
  const CircleCache cache(default_cache_dir());
  const auto results = run_suite(suite, cache);
  bool all_pass = true;
  for (const auto& r : results) {
    all_pass = all_pass && r.pass;
    out << (r.pass ? "PASS " : "FAIL ") << r.suite << '/' << r.name << " (" << r.cases
        << " cases)";
    if (!r.pass) out << " counterexample: " << r.counterexample;
    out << '\n';
  }
  return all_pass ? kOk : kVerificationFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Extremal cyclotomic polynomial heights: coefficients, circle maxima, towers"};
  app.name("cyclo-extremal");
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  CoeffsArgs coeffs;
  auto* c = app.add_subcommand("coeffs", "Coefficients and height of Phi_n");
  c->add_option("n", coeffs.n, "squarefree odd n")->required();
  c->add_flag("--emit-coeffs", coeffs.emit, "include the coefficient vector");
  c->add_option("--format", coeffs.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  CircleArgs circle;
  auto* ci = app.add_subcommand("circle", "Maximum L_n and smallest zero slope D_n");
  ci->add_option("n", circle.n, "squarefree odd n")->required();
  ci->add_option("--grid-mult", circle.grid_mult, "grid points per phi(n)")
      ->check(CLI::Range(4, 1 << 20));
  ci->add_option("--seeds", circle.seeds, "extra starting angles in radians")->delimiter(',');
  ci->add_flag("--no-cache", circle.no_cache, "neither read nor write the cache");

  ConstructArgs construct;
  auto* co = app.add_subcommand("construct", "Build a prime tower with a large maximum");
  co->set_help_flag("--help", "Print this help message and exit");  // frees -h for --h
  co->add_option("--omega", construct.omega, "number of primes")->check(CLI::Range(3, 15));
  co->add_option("--epsilon", construct.epsilon, "slack in (0, 1)")
      ->check(CLI::Validator(
          [](std::string& s) -> std::string {
            double v = 0;
            auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec != std::errc{} || ptr != s.data() + s.size() || !(v > 0 && v < 1))
              return "epsilon must lie in (0, 1)";
            return {};
          },
          "(0,1)"));
  co->add_option("--h", construct.h, "growth function const:c | affine:a,b | pow:k | exp:c");
  co->add_option("--budget", construct.budget, "candidate primes per level")
      ->check(CLI::PositiveNumber);
  co->add_option("--out", construct.out_path, "also write the report to this file");

  ScanArgs scan;
  auto* s = app.add_subcommand("scan", "Rank n of fixed order by A_n / M_n");
  s->add_option("--omega", scan.omega, "number of prime factors")->check(CLI::Range(1, 8));
  s->add_option("--max-n", scan.max_n, "largest n");
  s->add_option("--top", scan.top, "rows to print (0 = all)");

  std::string suite = "all";
  auto* v = app.add_subcommand("verify", "Run invariant suites");
  v->add_option("--suite", suite, "lemmas | binary | tower | all")
      ->check(CLI::IsMember({"lemmas", "binary", "tower", "all"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    emit_error(err, "Usage", e.what());
    return kUsage;
  }

  try {
    if (c->parsed()) return cmd_coeffs(coeffs, out);
    if (ci->parsed()) return cmd_circle(circle, out);
    if (co->parsed()) return cmd_construct(construct, out);
    if (s->parsed()) return cmd_scan(scan, out);
    return cmd_verify(suite, out);
  } catch (const Error& e) {
    emit_error(err, to_string(e.code()), e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    emit_error(err, "Internal", e.what());
    return kDomain;
  }
}

}  // namespace cyclo::cli
