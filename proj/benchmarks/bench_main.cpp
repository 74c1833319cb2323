#include <benchmark/benchmark.h>

#include "cyclo/circle.hpp"
#include "cyclo/construct.hpp"
#include "cyclo/cyclo_poly.hpp"

using namespace cyclo;

namespace {

const SquarefreeOdd& sample(std::int64_t n) {
  static thread_local SquarefreeOdd cached;
  if (cached.value() != static_cast<u64>(n)) cached = parse_squarefree_odd(static_cast<u64>(n));
  return cached;
}

void BM_EvalF(benchmark::State& state) {
  const auto& n = sample(state.range(0));
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_F(n, x));
    x += 1e-3;
  }
}
BENCHMARK(BM_EvalF)->Arg(105)->Arg(15015)->Arg(1241065);

void BM_SeriesQuotient(benchmark::State& state) {
  const auto& n = sample(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(phi_coefficients(n, CoeffMethod::SeriesQuotient));
}
BENCHMARK(BM_SeriesQuotient)->Arg(15015)->Arg(255255)->Unit(benchmark::kMillisecond);

void BM_RecursiveDivision(benchmark::State& state) {
  const auto& n = sample(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(phi_coefficients(n, CoeffMethod::RecursiveDivision));
}
BENCHMARK(BM_RecursiveDivision)->Arg(15015)->Arg(255255)->Unit(benchmark::kMillisecond);

void BM_ComputeL(benchmark::State& state) {
  const auto& n = sample(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(compute_L(n));
}
BENCHMARK(BM_ComputeL)->Arg(15015)->Arg(1241065)->Unit(benchmark::kMillisecond);

void BM_ComputeD(benchmark::State& state) {
  const auto& n = sample(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(compute_D(n));
}
BENCHMARK(BM_ComputeD)->Arg(15015)->Arg(1241065)->Unit(benchmark::kMillisecond);

void BM_TowerOmega4(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_tower(4, 0.5, HFunction::constant(1)));
}
BENCHMARK(BM_TowerOmega4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
