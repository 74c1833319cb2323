#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <vector>

#include "cyclo_cli/cache.hpp"
#include "cyclo_cli/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome cli(std::vector<std::string> args) {
  args.insert(args.begin(), "cyclo-extremal");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cyclo::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

struct TempCache {
  fs::path dir;
  TempCache() {
    dir = fs::temp_directory_path() / ("cyclo-cli-test-" + std::to_string(::getpid()));
    fs::remove_all(dir);
    ::setenv("CYCLO_EXTREMAL_CACHE_DIR", dir.c_str(), 1);
  }
  ~TempCache() { fs::remove_all(dir); }
};

}  // namespace

TEST_CASE("coeffs") {
  const auto r = cli({"coeffs", "105"});
  CHECK(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["A"] == "2");
  CHECK(j["S"] == "35");
  CHECK(j["M"] == "3");
  CHECK(j["ratio"].get<double>() == doctest::Approx(2.0 / 3));

  const auto e = json::parse(cli({"coeffs", "15", "--emit-coeffs"}).out)["coefficients"];
  REQUIRE(e.size() == 9);
  for (std::size_t i = 0; i < 9; ++i) CHECK(e[i] == e[8 - i]);

  const auto csv = cli({"coeffs", "3", "--format", "csv"});
  CHECK(csv.out == "n,A,S,degree,M,ratio\n3,1,3,2,1,1\n");

  const auto bad = cli({"coeffs", "9"});
  CHECK(bad.code == 2);
  CHECK(json::parse(bad.err)["error"] == "NotSquarefree");
  CHECK(cli({"coeffs", "12"}).code == 2);
  CHECK(cli({"coeffs"}).code == 1);
  CHECK(cli({"coeffs", "15", "--format", "xml"}).code == 1);
  CHECK(cli({"nonsense"}).code == 1);
  CHECK(cli({}).code == 1);
  CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("circle and its cache") {
  TempCache tmp;
  const auto first = cli({"circle", "15"});
  CHECK(first.code == 0);
  CHECK(fs::exists(tmp.dir / "circle-cache.json"));
  const auto second = cli({"circle", "15"});
  const auto uncached = cli({"circle", "15", "--no-cache"});
  CHECK(first.out == second.out);
  CHECK(first.out == uncached.out);
  const auto j = json::parse(first.out);
  CHECK(j["n"] == "15");
  CHECK(j["L"].get<double>() >= 2.0264);
  CHECK(j["t0"] == 1);

  const auto five = json::parse(cli({"circle", "5", "--no-cache"}).out);
  CHECK(five["L"].get<double>() == doctest::Approx(5));
  CHECK(five["x_M"].get<double>() == 0.0);

  const auto fine = json::parse(cli({"circle", "15", "--grid-mult", "32"}).out);
  CHECK(std::fabs(fine["L"].get<double>() - j["L"].get<double>()) < 1e-9);
  CHECK(cli({"circle", "15", "--seeds", "2.29,0.1", "--no-cache"}).code == 0);
  CHECK(cli({"circle", "9"}).code == 2);
  CHECK(cli({"circle", "15", "--grid-mult", "1"}).code == 1);

  cyclo::cli::CircleCache cache(tmp.dir);
  CHECK(cache.entries().size() == 2);
  CHECK(cyclo::cli::default_cache_dir() == tmp.dir);
}

TEST_CASE("construct") {
  const auto r = cli({"construct", "--omega", "3", "--epsilon", "0.5", "--h", "const:1"});
  CHECK(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["verdict"] == true);
  CHECK(j["levels"].size() == 3);

  const auto grown = cli({"construct", "--omega", "3", "--epsilon", "0.5", "--h", "pow:2"});
  CHECK(grown.code == 0);

  CHECK(cli({"construct", "--omega", "3", "--epsilon", "1.5", "--h", "const:1"}).code == 1);
  CHECK(cli({"construct", "--omega", "2"}).code == 1);
  CHECK(cli({"construct", "--h", "sqrt:2"}).code == 2);

  const auto partial = cli({"construct", "--omega", "4", "--h", "pow:2"});
  CHECK(partial.code == 4);
  CHECK(json::parse(partial.out)["verdict"] == false);

  const fs::path out = fs::temp_directory_path() / ("cyclo-tower-" + std::to_string(::getpid()));
  CHECK(cli({"construct", "--omega", "3", "--out", out.string()}).code == 0);
  std::ifstream f(out);
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str() == r.out);
  fs::remove(out);
}

TEST_CASE("scan") {
  const auto top = cli({"scan", "--omega", "3", "--max-n", "1000", "--top", "5"});
  CHECK(top.code == 0);
  std::istringstream lines(top.out);
  std::string header, first;
  std::getline(lines, header);
  std::getline(lines, first);
  CHECK(header == "n,A,M,ratio");
  CHECK(std::stod(first.substr(first.rfind(',') + 1)) >= 2.0 / 3);
  CHECK(std::count(top.out.begin(), top.out.end(), '\n') == 6);
  CHECK(cli({"scan", "--omega", "3", "--max-n", "104"}).out == "n,A,M,ratio\n");
  CHECK(cli({"scan", "--omega", "4", "--max-n", "2000"}).out.find("\n1155,") != std::string::npos);
}

TEST_CASE("verify") {
  TempCache tmp;
  CHECK(cli({"verify", "--suite", "lemmas"}).code == 0);
  const auto binary = cli({"verify", "--suite", "binary"});
  CHECK(binary.code == 0);
  CHECK(binary.out.find("PASS binary/witness_value") != std::string::npos);
  CHECK(cli({"verify", "--suite", "bogus"}).code == 1);

  REQUIRE(cli({"circle", "105"}).code == 0);
  CHECK(cli({"verify", "--suite", "all"}).code == 0);

  // corrupt the cached maximum
  const fs::path store = tmp.dir / "circle-cache.json";
  json j = json::parse(std::ifstream(store));
  j[0]["value"]["L"] = 27.5;
  std::ofstream(store) << j.dump();
  const auto bad = cli({"verify", "--suite", "all"});
  CHECK(bad.code == 5);
  CHECK(bad.out.find("FAIL cache/entries_recompute") != std::string::npos);
  CHECK(bad.out.find("n=105") != std::string::npos);

  std::ofstream(store) << "not json";
  CHECK(cli({"verify", "--suite", "all"}).code == 5);
}
