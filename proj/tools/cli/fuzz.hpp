#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "detsum/subset.hpp"

namespace detsum::cli {

struct SuiteResult {
  std::string name;
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  std::optional<std::uint64_t> first_failing_trial;
};

/// Names of every randomized suite, in run order.
std::vector<std::string> fuzz_suite_names();

/// Runs the named suites (all when `only` is empty). Each suite draws from its
/// own generator seeded from `seed` and the suite name, so results do not
/// depend on which other suites run.
std::vector<SuiteResult> run_fuzz(std::uint64_t seed, std::uint64_t trials,
                                  const std::vector<std::string>& only, ExecutionOptions exec);

}  // namespace detsum::cli
