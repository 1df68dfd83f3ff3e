#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sdfem {

struct VerifyOptions {
  double c_star = 1.0;
  std::vector<int> ns = {8, 16};          // small grids for the property checks
  std::vector<double> epsilons = {1e-4, 1e-8};
  int random_fields = 100;
  unsigned seed = 1u;
  double tol = 1e-12;  // solver tolerance for the orthogonality checks
};

struct CheckResult {
  std::string name;
  bool passed;
  double observed;
  double threshold;
  std::string detail;  // relation and context, e.g. "max over 128 patches, require <= threshold"
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  bool all_passed() const;
};

// Property suite: coercivity of the assembled operator, algebraic
// orthogonality of converged solves, iterative-vs-direct agreement, patch
// integral cancellation, postprocessing exactness/continuity/stability,
// interpolation bounds, and the closed-form norm oracle. Thresholds are
// fixed in the implementation.
VerificationReport run_verification(const VerifyOptions& opts = {});

void print_verification(std::ostream& os, const VerificationReport& report);

} // namespace sdfem
