#pragma once

#include <optional>

#include "apfact/symbol.hpp"
#include "apfact/verify.hpp"

namespace apfact {

// Which construction produced a solution of G phi_+ = phi_-.
enum class Provenance { StructuredN, BigGap, OneSided };

const char* to_string(Provenance p);

// A solution pair of the homogeneous problem G phi_+ = phi_-:
//   e_{-lambda} phi_{1+}           = phi_{1-}
//   g phi_{1+} + e_lambda phi_{2+} = phi_{2-}
// with spectrum(phi_{j+}) in [0, inf) and spectrum(phi_{j-}) in (-inf, 0].
struct RHSolution {
  APPoly phi1_plus, phi2_plus, phi1_minus, phi2_minus;
  Provenance provenance = Provenance::StructuredN;
  Frequency used_nu;

  Vec2 plus() const { return {phi1_plus, phi2_plus}; }
  Vec2 minus() const { return {phi1_minus, phi2_minus}; }
  bool is_zero() const {
    return phi1_plus.is_zero() && phi2_plus.is_zero() &&
           phi1_minus.is_zero() && phi2_minus.is_zero();
  }
};

// phi_+ = e_{mu1} psi_plus and phi_- = e_{-mu2} psi_minus with the shifted
// vectors touching frequency 0 on their respective sides; mu = mu1 + mu2 is
// the candidate partial index.
struct ReducedSolution {
  Frequency mu1, mu2, mu;
  Vec2 psi_plus, psi_minus;
};

// Alternating-sum solution for a class representation (any N >= 1):
//   phi_{1+} = e_{lambda-nu} sum_{j=0}^{N-1} (-1)^j a_+^{N-1-j} a_-^j
//              e_{-j lambda/N},
//   phi_{2+} = -a_+^N,   phi_{1-} = e_{-lambda} phi_{1+},
//   phi_{2-} = (-1)^{N-1} a_-^N.
// All solution invariants are asserted before returning.
RHSolution solve_structured(const ClassMembership& membership,
                            const Frequency& lambda);

// Direct solution when the two-sided gap clears the whole interval:
//   phi_+ = (e_{lambda-nu}, -e_{-nu} g_+),
//   phi_- = (e_{-nu},  e_{lambda-nu} g_-),
// for any nu in [max{0, lambda-eta1_minus}, min{eta1_plus, lambda}].
RHSolution solve_biggap(const GapData& gap, const Frequency& lambda,
                        const Frequency& nu);

// Explicit solution when g carries a zero-frequency term and the rest of
// one side clears the interval: with Omega(g_minus) in (-inf, -lambda],
//   phi_+ = (e_lambda, -(g_+ + mean)),  phi_- = (1, e_lambda g_-);
// with Omega(g_plus) in [lambda, inf),
//   phi_+ = (1, -e_{-lambda} g_+),      phi_- = (e_{-lambda}, g_- + mean).
// Returns nullopt when neither containment holds.
std::optional<RHSolution> solve_one_sided(const TriangularSymbol& sym);

// Extracts mu1 = min over nonzero components of min-spectrum(phi_{j+}) and
// mu2 = -max over components of max-spectrum(phi_{j-}), and shifts the
// solution so each side touches frequency 0. Throws ZeroSolution when a
// side vanishes identically. For fully represented gap data the reduced
// index is cross-checked against the closed-form candidate.
ReducedSolution exponential_reduction(const RHSolution& sol,
                                      const GapData& gap,
                                      const Frequency& lambda);

// Symbolic check of both row identities (exact coefficient comparison),
// a spectrum-sign audit, and a numeric spot check at 32 random real
// points. Never throws; the report carries pass/fail per check.
VerificationReport verify_solution(const TriangularSymbol& sym,
                                   const RHSolution& sol);

}  // namespace apfact
