// Self-check suites: every cross-identity the library promises, runnable as
// a batch. Each check compares an exact formula against an independent
// computation (brute-force census, alternative formula, or a hand value)
// and reports the values it compared, so a failure is diagnosable from the
// report alone.
#pragma once

#include <string>
#include <vector>

#include "coprime/census.hpp"

namespace coprime {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;  // what was compared, with exact values
};

/// Run one of the named suites: "identities", "oracles", "recursion",
/// "density", or "all". Unknown names throw std::invalid_argument.
/// Exceptions inside a check are caught and reported as failures.
std::vector<CheckResult> verify_suite(const std::string& suite,
                                      const CensusOptions& opts = {});

/// Convenience: true iff every check passed.
bool all_passed(const std::vector<CheckResult>& results);

}  // namespace coprime
