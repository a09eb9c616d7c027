// verify.hpp -- the property suites behind `permwordle verify`.
//
// Suites: perm-core, strategy-engine, combinatorics, optimal-search. Checks
// are exhaustive where cheap and seeded-random above that, so a given seed
// always runs the same cases.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace permwordle {

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  /// First counterexample or error, empty on success.
  std::string detail;
};

struct VerifyOptions {
  /// Empty runs every suite.
  std::vector<std::string> suites;
  std::uint64_t seed = 1;
};

std::vector<std::string> suite_names();

/// Throws std::invalid_argument for an unknown suite name.
std::vector<CheckResult> run_verification(const VerifyOptions& options);

}  // namespace permwordle
