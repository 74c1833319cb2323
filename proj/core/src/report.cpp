#include "cyclo/report.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <string>

#include "cyclo/constants.hpp"
#include "cyclo/error.hpp"

namespace cyclo {
namespace {

Json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

double read_number(const Json& j) {
  if (j.is_null()) return std::numeric_limits<double>::infinity();
  return j.get<double>();
}

std::string decimal(const mpz_class& v) { return v.get_str(); }

u64 read_u64(const Json& j) {
  const std::string s = j.get<std::string>();
  std::size_t pos = 0;
  const unsigned long long v = std::stoull(s, &pos);
  if (pos != s.size()) throw Error(ErrorCode::InvalidArgument, "bad integer '" + s + "'");
  return v;
}

template <class T>
Json optional_json(const std::optional<T>& v) {
  if (!v) return nullptr;
  return *v;
}

}  // namespace

Json to_json(const CycloPoly& poly) {
  Json arr = Json::array();
  for (std::size_t i = 0; i < poly.size(); ++i) arr.push_back(decimal(poly.coeff(i)));
  return arr;
}

CycloPoly cyclo_poly_from_json(u64 n, const Json& j) {
  std::vector<mpz_class> coeffs;
  coeffs.reserve(j.size());
  for (const auto& c : j) coeffs.emplace_back(c.get<std::string>());
  return CycloPoly(n, std::move(coeffs));
}

Json height_json(const HeightReport& h, const mpz_class& M) {
  Json j;
  j["n"] = std::to_string(h.n);
  j["A"] = decimal(h.A);
  j["S"] = decimal(h.S);
  j["degree"] = h.degree;
  j["M"] = decimal(M);
  j["ratio"] = mpq_class(h.A, M).get_d();
  return j;
}

Json to_json(const CircleProfile& p) {
  Json j;
  j["n"] = std::to_string(p.n.value());
  j["L"] = number(p.L);
  j["x_M"] = number(p.x_M);
  j["D"] = number(p.D);
  j["t0"] = p.t0;
  j["grid_mult"] = p.grid_mult;
  j["refined"] = p.refined;
  return j;
}

CircleProfile circle_profile_from_json(const Json& j) {
  CircleProfile p;
  p.n = parse_squarefree_odd(read_u64(j.at("n")));
  p.L = read_number(j.at("L"));
  p.x_M = read_number(j.at("x_M"));
  p.D = read_number(j.at("D"));
  p.t0 = j.at("t0").get<u64>();
  p.grid_mult = j.at("grid_mult").get<int>();
  p.refined = j.at("refined").get<bool>();
  return p;
}

Json to_json(const HFunction& h) {
  Json j;
  j["kind"] = std::string(h.kind_name());
  j["params"] = h.params();
  return j;
}

HFunction h_function_from_json(const Json& j) {
  std::string text = j.at("kind").get<std::string>() + ":";
  const auto params = j.at("params").get<std::vector<double>>();
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i) text += ',';
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, params[i]);
    text.append(buf, ptr);
  }
  return HFunction::parse(text);
}

Json to_json(const PrimeTower& t) {
  Json j;
  j["omega"] = t.omega;
  j["epsilon"] = t.epsilon;
  j["h"] = to_json(t.h);
  j["verdict"] = t.verdict;
  j["complete"] = t.complete;
  j["stop_reason"] = t.stop_reason.empty() ? Json(nullptr) : Json(t.stop_reason);
  const BoundConstant c = c_constant(t.omega);
  j["c_omega"] = c.log_space ? Json(nullptr) : Json(c.value);
  j["log2_c_omega"] = c.log2_value;
  if (!t.levels.empty()) {
    j["n"] = std::to_string(t.n().value());
    j["L"] = number(t.levels.back().L());
    j["M_n"] = decimal(m_bound(t.n()));
    j["certified_A_lower"] = decimal(certified_height_lower(t));
  }
  if (t.witness) {
    const auto& w = *t.witness;
    j["witness"] = {{"a", w.a},          {"num", w.point.num},   {"den", w.point.den},
                    {"x", number(w.x)}, {"bound", number(w.bound)}, {"measured", number(w.measured)}};
  } else {
    j["witness"] = nullptr;
  }
  Json levels = Json::array();
  for (const auto& lvl : t.levels) {
    Json l;
    l["index"] = lvl.index;
    l["p"] = lvl.p;
    l["n"] = std::to_string(lvl.n().value());
    l["L"] = number(lvl.L());
    l["x_M"] = number(lvl.profile.x_M);
    l["D"] = lvl.has_D ? number(lvl.profile.D) : Json(nullptr);
    l["t0"] = lvl.has_D ? Json(lvl.profile.t0) : Json(nullptr);
    l["r"] = optional_json(lvl.r);
    l["b"] = lvl.b ? number(*lvl.b) : Json(nullptr);
    l["residue"] = lvl.residue_class ? Json(lvl.residue_class->residue) : Json(nullptr);
    l["class_modulus"] =
        lvl.residue_class ? Json(std::to_string(lvl.residue_class->modulus)) : Json(nullptr);
    l["target"] = number(lvl.target);
    l["log_target"] = number(lvl.log_target);
    l["D_lower"] = number(lvl.D_lower);
    l["candidates_tried"] = lvl.candidates_tried;
    l["grid_mult"] = lvl.profile.grid_mult;
    l["refined"] = lvl.profile.refined;
    l["pass"] = lvl.pass;
    levels.push_back(std::move(l));
  }
  j["levels"] = std::move(levels);
  return j;
}

PrimeTower prime_tower_from_json(const Json& j) {
  PrimeTower t;
  t.omega = j.at("omega").get<int>();
  t.epsilon = j.at("epsilon").get<double>();
  t.h = h_function_from_json(j.at("h"));
  t.verdict = j.at("verdict").get<bool>();
  t.complete = j.at("complete").get<bool>();
  if (const auto& r = j.at("stop_reason"); !r.is_null()) t.stop_reason = r.get<std::string>();
  if (const auto& w = j.at("witness"); !w.is_null()) {
    BinaryWitness bw;
    bw.a = w.at("a").get<i64>();
    bw.point = Turn{w.at("num").get<i64>(), w.at("den").get<u64>()};
    bw.x = read_number(w.at("x"));
    bw.bound = read_number(w.at("bound"));
    bw.measured = read_number(w.at("measured"));
    t.witness = bw;
  }
  SquarefreeOdd n;
  for (const auto& l : j.at("levels")) {
    TowerLevel lvl;
    lvl.index = l.at("index").get<int>();
    lvl.p = l.at("p").get<u64>();
    n = n.times(lvl.p);
    if (n.value() != read_u64(l.at("n")))
      throw Error(ErrorCode::InvalidArgument, "level n does not match the product of primes");
    lvl.profile.n = n;
    lvl.profile.L = read_number(l.at("L"));
    lvl.profile.x_M = read_number(l.at("x_M"));
    lvl.has_D = !l.at("D").is_null();
    if (lvl.has_D) {
      lvl.profile.D = l.at("D").get<double>();
      lvl.profile.t0 = l.at("t0").get<u64>();
    }
    lvl.profile.grid_mult = l.at("grid_mult").get<int>();
    lvl.profile.refined = l.at("refined").get<bool>();
    if (!l.at("r").is_null()) lvl.r = l.at("r").get<i64>();
    if (!l.at("b").is_null()) lvl.b = l.at("b").get<double>();
    if (!l.at("residue").is_null())
      lvl.residue_class = ResidueClass{l.at("residue").get<u64>(), read_u64(l.at("class_modulus"))};
    lvl.target = read_number(l.at("target"));
    lvl.log_target = read_number(l.at("log_target"));
    lvl.D_lower = read_number(l.at("D_lower"));
    lvl.candidates_tried = l.at("candidates_tried").get<u64>();
    lvl.pass = l.at("pass").get<bool>();
    t.levels.push_back(std::move(lvl));
  }
  return t;
}

}  // namespace cyclo
