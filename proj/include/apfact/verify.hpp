#pragma once

#include <string>
#include <vector>

#include "apfact/matrix2.hpp"
#include "apfact/symbol.hpp"

namespace apfact {

struct Factorization;  // factorize.hpp

// Outcome of a numeric or symbolic audit. `checks` carries one row per
// named test; `max_residual`/`worst_point` summarize the numeric part.
struct VerificationReport {
  struct Check {
    std::string name;
    bool pass = true;
    std::string detail;
  };
  double max_residual = 0.0;
  int sample_count = 0;
  Complex worst_point{0.0, 0.0};
  std::vector<Check> checks;

  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  void add(std::string name, bool pass, std::string detail = "") {
    checks.push_back({std::move(name), pass, std::move(detail)});
  }
};

// Max over `points` uniform samples x in [-50, 50] of the sup-norm of
// G(x) - G_-(x) D(x) G_+(x)^{-1}. Deterministic for a fixed seed.
VerificationReport grid_residual(const TriangularSymbol& sym,
                                 const Factorization& fac, int points,
                                 unsigned seed = 12345);

// Minimum of |f1| + |f2| sampled over the strip -eps2 <= Im z <= eps1,
// x in [-200, 200], on an nx-by-ny grid whose height lines always include
// the real axis. Advisory: sampling can refute but never certify a
// positive infimum.
double strip_infimum_estimate(const APPoly& f1, const APPoly& f2, double eps1,
                              double eps2, int nx, int ny);

// Pass iff every entry's spectrum stays in [0, inf) (plus) respectively
// (-inf, 0] (minus).
VerificationReport spectrum_sign_audit(const Mat2& m, HalfPlane side);

}  // namespace apfact
