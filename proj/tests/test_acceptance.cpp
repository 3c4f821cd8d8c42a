#include <cstdio>

#include "doctest.h"

#include "apfact/suite.hpp"

// The release gate: every shipped claim about the solver has a criterion
// here, and each prints its own pass/fail line so a failing run names the
// broken claim directly.
TEST_CASE("acceptance criteria") {
  const auto results = apfact::run_acceptance_suite();
  REQUIRE(results.size() == 10);
  for (const auto& c : results) {
    std::printf("criterion %2d %-28s %s  %s\n", c.number, c.name.c_str(),
                c.pass ? "pass" : "FAIL", c.detail.c_str());
    CAPTURE(c.number);
    CAPTURE(c.name);
    CAPTURE(c.detail);
    CHECK(c.pass);
  }
}
