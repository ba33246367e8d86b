#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace kelvin_eit {

struct CheckResult {
  std::string name;
  bool passed = false;
  double error = 0.0;  // measured deviation
  double tol = 0.0;
  std::string message;  // set when the check threw
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckResult> checks;
  bool passed() const;
};

/// Names of the property suites: geometry, harmonics, dnmaps, bounds, moebius.
std::vector<std::string> suite_names();

/// Runs the named suites (all when `only` is empty) with random samples drawn
/// from a generator seeded with `seed`. Throws DomainError for unknown names.
std::vector<SuiteResult> run_verification(std::uint64_t seed, const std::vector<std::string>& only = {});

}  // namespace kelvin_eit
