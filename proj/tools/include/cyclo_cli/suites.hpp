#pragma once

// Invariant suites behind `verify`. Each check records the inputs of its first
// counterexample.

#include <string>
#include <string_view>
#include <vector>

#include "cyclo_cli/cache.hpp"

namespace cyclo::cli {

struct CheckResult {
  std::string suite;
  std::string name;
  bool pass = true;
  std::size_t cases = 0;
  std::string counterexample;
};

std::vector<CheckResult> suite_lemmas();
std::vector<CheckResult> suite_binary();
std::vector<CheckResult> suite_tower();
/// Recomputes every entry of the current tool version.
std::vector<CheckResult> suite_cache(const CircleCache& cache);

/// "lemmas" | "binary" | "tower" | "all"; all adds the cache suite.
std::vector<CheckResult> run_suite(std::string_view suite, const CircleCache& cache);

}  // namespace cyclo::cli
