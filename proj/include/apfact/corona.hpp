#pragma once

#include <optional>
#include <string>
#include <vector>

#include "apfact/matrix2.hpp"
#include "apfact/symbol.hpp"

namespace apfact {

// Three-valued outcome for conditions that declarations may leave open.
enum class Verdict { Holds, Fails, Unknown };

const char* to_string(Verdict v);

// Joint verdict for the two half-plane corona conditions. The spectral
// conditions tie both half-planes to a shared offset, so every verdict
// this module produces sets `plus` and `minus` identically; the fields
// stay separate because downstream consumers combine them with verdicts
// from other sources.
struct CoronaVerdict {
  Verdict plus = Verdict::Unknown;
  Verdict minus = Verdict::Unknown;
  // Tags of the decisive conditions: the ones that fired on Holds, the
  // ones that were evaluated and refuted on Fails. Nonempty whenever the
  // verdict is not Unknown.
  std::vector<std::string> fired_conditions;
  std::optional<double> evidence;  // sampled strip infimum, when computed

  Verdict combined() const {
    if (plus == Verdict::Fails || minus == Verdict::Fails) {
      return Verdict::Fails;
    }
    if (plus == Verdict::Holds && minus == Verdict::Holds) {
      return Verdict::Holds;
    }
    return Verdict::Unknown;
  }
};

// Bezout pair for a 2-vector omega on one half-plane:
//   omega1 h1 + omega2 h2 = 1  up to residual_bound on the real line.
struct CoronaPair {
  APPoly h1, h2;
  double residual_bound = 0.0;
};

// Decides from the gap edges and attained flags alone whether some
// admissible offset makes both corona conditions hold. One condition is
// available for N = 1 (inner edges attained and summing to the interval
// length) and four for N > 1 (inner edges summing to lambda/N, either
// side's two edges aligned in the ratio N : N-1, or outer edges summing
// to lambda/(N-1)). Each is decided exactly; attainment gaps downgrade a
// would-be firing to Unknown. The strip condition is NOT folded in here;
// callers combine it separately for N > 1.
CoronaVerdict spectral_corona_check(const GapData& gap, int N,
                                    const Frequency& lambda);

// Joint boundedness-away-from-zero of |g_-| + |g_+| on the unit strip
// around the real line. A single-exponential side settles it (such a
// factor never vanishes); two binomials dispatch to the root criterion;
// anything else returns Unknown with an advisory sampled infimum attached
// (sampling can refute but never certify).
CoronaVerdict strip_condition(const APPoly& g_minus, const APPoly& g_plus);

// Exact common-zero test for a pair of binomials. With gap widths
// alpha (plus side) and beta (minus side) and alpha/beta = p/q in lowest
// terms, the two zero lattices intersect iff
//   (-c1/c2)^q = (-c_{-2}/c_{-1})^p
// (coefficients indexed from the inner edges outward); intersection means
// the joint infimum vanishes: Fails. Rational exponents always take this
// branch; `irrational_ratio` forces the modulus-only comparison that
// governs incommensurable gap widths, and exists so that branch stays
// testable. Throws NotBinomial unless both inputs have exactly two terms.
CoronaVerdict binomial_strip_criterion(const APPoly& g_minus,
                                       const APPoly& g_plus,
                                       bool irrational_ratio = false);

// Constructs a Bezout pair for (omega1, omega2) on the given half-plane.
// Rules, in order: a nonzero constant component is inverted directly
// (residual 0); a two-term component whose dominant coefficient sits at
// frequency 0 — necessarily the extreme frequency for its half-plane —
// is inverted by truncated geometric series (residual <= tol). When
// neither rule applies: if every nonzero component has its extreme
// frequency strictly interior the pair provably vanishes at infinity in
// the half-plane and CoronaConditionFails is thrown; otherwise
// Unsupported.
CoronaPair corona_pair(const APPoly& omega1, const APPoly& omega2,
                       HalfPlane side, double tol);

// Completes a solution column to a determinant-one matrix:
//   plus side:  [[e_{-delta} psi1, -h2], [e_{-delta} psi2, h1]]
//   minus side: [[psi1, -h2], [psi2, h1]]
// The pair h must be a Bezout pair for the (shifted) first column. The
// determinant is checked against 1 coefficient-wise (1e-12 for exact
// pairs; when h carries a truncation residual the bound scales with it,
// floored at 1e-10) and every entry's spectrum must lie on the matrix's
// half-line.
Mat2 build_H(const Vec2& psi, const CoronaPair& h,
             const Frequency& delta_tilde, HalfPlane side);

}  // namespace apfact
