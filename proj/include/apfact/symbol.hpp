#pragma once

#include <optional>
#include <string>
#include <variant>

#include "apfact/appoly.hpp"
#include "apfact/matrix2.hpp"

namespace apfact {

// Whether a spectral edge value is known to be carried by an actual term.
// Represented exponential sums always attain their edges; declared
// (truncated) inputs may leave attainment open.
enum class Attain { Yes, No, Unknown };

inline const char* to_string(Attain a) {
  return a == Attain::Yes ? "yes" : (a == Attain::No ? "no" : "unknown");
}

// One edge of a one-sided spectrum. A missing value means the edge is
// infinite (the side carries no terms at all).
struct Edge {
  std::optional<Frequency> value;
  Attain attained = Attain::Yes;

  bool is_finite() const { return value.has_value(); }
  bool attained_yes() const { return is_finite() && attained == Attain::Yes; }
};

// Caller-declared spectral edges for inputs that stand for truncations of
// absolutely convergent series. Entries left unset fall back to the
// represented terms with attainment recorded as unknown.
struct DeclaredSpectrum {
  struct Entry {
    std::optional<Frequency> value;  // unset = declared infinite
    Attain attained = Attain::Unknown;
  };
  std::optional<Entry> eta1_minus, eta2_minus, eta1_plus, eta2_plus;
};

// The 2x2 triangular symbol determined by the interval length lambda and
// the off-diagonal entry g:
//   [ e_{-lambda}   0        ]
//   [ g             e_lambda ]
struct TriangularSymbol {
  Frequency lambda;
  APPoly g;
  std::optional<DeclaredSpectrum> declared_gaps;
};

Mat2 symbol_matrix(const TriangularSymbol& sym);

// g split around frequency zero together with the distances of its
// one-sided spectra from the origin:
//   eta1_plus  = inf  spectrum(g_plus),   eta2_plus  = sup spectrum(g_plus),
//   eta1_minus = -sup spectrum(g_minus),  eta2_minus = -inf spectrum(g_minus).
struct GapData {
  APPoly g_minus, g_plus;
  Complex zero_coeff{0, 0};
  bool has_zero_frequency = false;
  Edge eta1_minus, eta2_minus, eta1_plus, eta2_plus;
};

// Splits g, computes the edges from the represented spectra, and applies
// declared overrides (declarations take precedence; contradictions with the
// represented terms raise InconsistentDeclaration).
GapData decompose(const TriangularSymbol& sym);

// A representation  g = a_minus e_{-beta} + a_plus e_nu  with
// lambda / (nu + beta) = N, spectrum(a_plus) in [0, inf),
// spectrum(a_minus) in (-inf, 0], and for N > 1 the sharpened conditions
//   b_plus  = e_{beta/(N-1)} a_minus  bounded in the upper half-plane,
//   b_minus = e_{-nu/(N-1)} a_plus   bounded in the lower half-plane.
struct ClassMembership {
  int N = 1;
  Frequency lambda;
  Frequency nu_min, nu_max;  // admissible offsets [M, m]
  Frequency chosen_nu, beta;
  APPoly a_minus, a_plus;
  std::optional<APPoly> b_minus, b_plus;  // N > 1 only
  // Edges cached from classification so offset rebinding needs no symbol.
  Edge eta1_minus, eta2_minus, eta1_plus, eta2_plus;

  APPoly g_plus() const { return shift(a_plus, chosen_nu); }
  APPoly g_minus() const { return shift(a_minus, -beta); }
};

// True when the stored edges coincide with the represented spectrum of
// `side` and are flagged attained, i.e. the data carries no truncation
// metadata that could make spectrum inspection lie. For the minus side
// the edges are the negated spectrum bounds in swapped order.
bool edges_match_spectrum(const APPoly& side, const Edge& inner,
                          const Edge& outer, bool minus_side);

// Definite non-membership, tagged with the first violated inequality.
struct NotInClass {
  std::string violated;
};

using ClassifyResult = std::variant<ClassMembership, NotInClass>;

// Decides membership from the spectral edges alone. A two-sided gap of
// total size >= lambda yields N = 1; otherwise N is pinned by the ceiling
// formula and the three edge inequalities are checked in order:
// minus-edge-ratio, plus-edge-ratio, outer-sum-bound. The default chosen
// offset is the left endpoint of the admissible interval. Throws
// ZeroFrequencyPresent when g carries a zero-frequency term.
ClassifyResult classify(const TriangularSymbol& sym);

// The four offset rebindings used by the edge-condition case analysis.
enum class CriterionCase {
  InnerEdgeSum,       // nu = eta1_plus
  PlusEdgesAligned,   // nu = eta1_plus (= (N-1)/N eta2_plus when aligned)
  MinusEdgesAligned,  // nu = lambda/N - eta1_minus
  OuterEdgeSum,       // nu = (N-1)/N eta2_plus
};

const char* to_string(CriterionCase c);

// Rebinds the representation offset to the value a given case pins and
// rebuilds a_pm, b_pm accordingly. Throws NuOutOfInterval when the pinned
// value leaves [nu_min, nu_max], and ValidationError for N = 1 input.
ClassMembership choose_nu(const ClassMembership& membership,
                          CriterionCase target);

// Membership for a symbol whose lower part is the single exponential
// c e_{-sigma}, 0 < sigma < lambda, decided by scanning for the smallest
// block count whose admissible offset window is nonempty. Agrees with
// classify on shared preconditions. Throws FormMismatch when g does not
// have the required shape.
ClassifyResult classify_exp_form(const TriangularSymbol& sym,
                                 const Frequency& sigma);

}  // namespace apfact
