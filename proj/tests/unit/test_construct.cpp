#include <doctest.h>

#include <fstream>
#include <sstream>

#include "cyclo/construct.hpp"
#include "cyclo/error.hpp"
#include "cyclo/parallel.hpp"
#include "cyclo/report.hpp"

using namespace cyclo;

namespace {

std::string fixture(const std::string& name) {
  std::ifstream in(std::string(CYCLO_FIXTURE_DIR) + "/" + name);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("HFunction") {
  CHECK(HFunction::parse("const:1")(1e9) == 1);
  CHECK(HFunction::parse("affine:2,1")(5) == 11);
  CHECK(HFunction::parse("pow:2")(5) == 25);
  CHECK(HFunction::parse("exp:2")(10) == 1024);
  CHECK(HFunction::parse("pow:2").to_string() == "pow:2");
  CHECK(HFunction::parse("affine:2.5,0").to_string() == "affine:2.5,0");
  CHECK(HFunction::parse(HFunction::exponential(1.5).to_string()) == HFunction::exponential(1.5));
  for (const char* bad : {"", "const", "const:", "const:0", "const:-1", "affine:1", "pow:x",
                          "exp:0", "linear:1", "affine:0,0", "const:inf"})
    CHECK_THROWS_AS(HFunction::parse(bad), Error);
}

TEST_CASE("binary_seed") {
  const auto s1 = binary_seed(HFunction::constant(1), 3);
  CHECK(s1.p1 == 5);
  CHECK(s1.p2 == 7);
  const auto s2 = binary_seed(HFunction::affine(2, 0), 3);
  CHECK(s2.p1 == 5);
  CHECK(s2.p2 == 17);
  const auto s3 = binary_seed(HFunction::power(2), 3);
  CHECK(s3.p1 == 5);
  CHECK(s3.p2 == 37);
  CHECK(s3.witness.a == -1);
  CHECK(binary_seed(HFunction::constant(1), 6).p1 == 7);
}

TEST_CASE("omega 3 towers") {
  const PrimeTower t = build_tower(3, 0.5, HFunction::constant(1));
  REQUIRE(t.levels.size() == 3);
  CHECK(t.verdict);
  CHECK(t.complete);
  CHECK(t.stop_reason.empty());
  const auto& top = t.levels.back();
  const double target = 0.5 * c_constant(3).value * static_cast<double>(t.n().value()) *
                        m_bound(t.n()).get_d();
  CHECK(top.L() > target);
  CHECK(top.target == doctest::Approx(target).epsilon(1e-14));
  for (const auto& lvl : t.levels) CHECK(lvl.profile.D >= lvl.D_lower);
  CHECK(top.residue_class->modulus == 35);
  CHECK(top.p % 35 == top.residue_class->residue);
  CHECK(*top.b <= 1.5);
  CHECK(to_json(t).dump(2) + "\n" == fixture("tower_omega3_const1.json"));

  const PrimeTower easy = build_tower(3, 0.9, HFunction::constant(1));
  CHECK(easy.verdict);

  const PrimeTower grown = build_tower(3, 0.5, HFunction::power(2));
  CHECK(grown.verdict);
  for (std::size_t i = 1; i < grown.levels.size(); ++i) {
    const double prev = static_cast<double>(grown.levels[i - 1].n().value());
    CHECK(static_cast<double>(grown.levels[i].p) > prev * prev);
  }
  CHECK(to_json(grown).dump(2) + "\n" == fixture("tower_omega3_pow2.json"));
}

TEST_CASE("omega 4 tower") {
  const PrimeTower t = build_tower(4, 0.5, HFunction::constant(1));
  CHECK(t.verdict);
  const double target = 0.5 * c_constant(4).value * static_cast<double>(t.n().value()) *
                        m_bound(t.n()).get_d();
  CHECK(t.levels.back().L() > target);
  CHECK(to_json(t).dump(2) + "\n" == fixture("tower_omega4_const1.json"));
}

TEST_CASE("towers are identical for any thread count") {
  const unsigned saved = thread_count();
  set_thread_count(1);
  const auto a = to_json(build_tower(4, 0.5, HFunction::constant(1))).dump();
  set_thread_count(3);
  const auto b = to_json(build_tower(4, 0.5, HFunction::constant(1))).dump();
  set_thread_count(saved);
  CHECK(a == b);
}

TEST_CASE("tower stops early instead of throwing") {
  // n overflows 64 bits at level 4
  const PrimeTower t = build_tower(4, 0.5, HFunction::power(2));
  CHECK_FALSE(t.verdict);
  CHECK_FALSE(t.complete);
  CHECK(t.levels.size() == 3);
  CHECK_FALSE(t.stop_reason.empty());

  // grids above the evaluation cap propagate as BudgetExceeded
  try {
    build_tower(5, 0.5, HFunction::constant(1));
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BudgetExceeded);
  }

  TowerConfig starved;
  starved.search_budget = 1;
  starved.candidate_budget = 1;
  const PrimeTower cut = build_tower(3, 0.5, HFunction::constant(1), starved);
  CHECK_FALSE(cut.complete);
  CHECK(cut.levels.size() == 2);
}

TEST_CASE("build_tower argument checks") {
  CHECK_THROWS_AS(build_tower(2, 0.5, HFunction::constant(1)), Error);
  CHECK_THROWS_AS(build_tower(3, 1.5, HFunction::constant(1)), Error);
  CHECK_THROWS_AS(build_tower(3, 0.0, HFunction::constant(1)), Error);
}

TEST_CASE("certified_height_lower") {
  const PrimeTower t = build_tower(3, 0.5, HFunction::constant(1));
  const double q = t.levels.back().L() / static_cast<double>(t.n().value());
  CHECK(certified_height_lower(t) == static_cast<long>(q));
}

TEST_CASE("scan_ratios") {
  const auto rows = scan_ratios(3, 200);
  bool has105 = false;
  for (const auto& r : rows) {
    CHECK(r.ratio <= 1.0);
    if (r.n.value() == 105) {
      has105 = true;
      CHECK(r.A == 2);
      CHECK(r.M == 3);
      CHECK(r.ratio == doctest::Approx(2.0 / 3));
    }
  }
  CHECK(has105);
  CHECK(scan_ratios(3, 104).empty());
  const auto four = scan_ratios(4, 2000);
  CHECK(std::any_of(four.begin(), four.end(), [](const auto& r) { return r.n.value() == 1155; }));
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i - 1].ratio >= rows[i].ratio);
}
