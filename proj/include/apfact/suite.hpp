#pragma once

#include <string>
#include <vector>

namespace apfact {

struct CriterionResult {
  int number = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

// The curated ten-part acceptance battery: randomized solution identities,
// frozen worked examples, index formulas, cross-rule consistency, the
// joint-zero criterion against its sampling oracle, the non-factorable
// branch, uniqueness up to a constant factor, Bezout residuals, and the
// sampled corona equivalence. Runs in seconds; every part must pass.
std::vector<CriterionResult> run_acceptance_suite();

}  // namespace apfact
