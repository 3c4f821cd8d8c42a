#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "apfact/rational.hpp"

namespace apfact {

using Complex = std::complex<double>;

// Which half-plane a function is required to extend to boundedly.
// Plus means spectrum in [0, +inf), Minus means spectrum in (-inf, 0].
enum class HalfPlane { Plus, Minus };

inline const char* to_string(HalfPlane side) {
  return side == HalfPlane::Plus ? "plus" : "minus";
}

struct Term {
  Frequency freq;
  Complex coeff;
};

// Finite exponential sum  sum_j c_j * e_{freq_j},  e_f(x) = exp(i f x).
// Terms are kept sorted by strictly increasing frequency; coefficients with
// modulus <= coeff_zero_tol are pruned after every operation, and the empty
// term list is the canonical zero.
class APPoly {
 public:
  static constexpr double coeff_zero_tol = 1e-14;

  APPoly() = default;
  APPoly(Complex constant) {  // NOLINT: implicit by design
    if (std::abs(constant) > coeff_zero_tol) {
      terms_.push_back({Frequency(0), constant});
    }
  }
  APPoly(double constant) : APPoly(Complex(constant, 0.0)) {}  // NOLINT
  APPoly(int constant) : APPoly(Complex(constant, 0.0)) {}     // NOLINT

  // c * e_f.
  static APPoly exponential(const Frequency& f, Complex c = Complex(1, 0));

  // Normalizes an arbitrary term list: sorts, merges equal frequencies,
  // prunes near-zero coefficients.
  static APPoly from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  // True when the series is a (possibly zero) constant.
  bool is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && terms_[0].freq.is_zero());
  }
  // True when there is exactly one term (a single exponential).
  bool is_single_exponential() const { return terms_.size() == 1; }

  // Exact comparison: identical frequencies and bit-identical coefficients.
  friend bool operator==(const APPoly& a, const APPoly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      if (!(a.terms_[i].freq == b.terms_[i].freq)) return false;
      if (a.terms_[i].coeff != b.terms_[i].coeff) return false;
    }
    return true;
  }

 private:
  std::vector<Term> terms_;
};

APPoly operator+(const APPoly& a, const APPoly& b);
APPoly operator-(const APPoly& a, const APPoly& b);
APPoly operator-(const APPoly& a);
APPoly operator*(const APPoly& a, const APPoly& b);
APPoly operator*(Complex s, const APPoly& a);
inline APPoly operator*(double s, const APPoly& a) {
  return Complex(s, 0.0) * a;
}

// a^n by repeated multiplication; n >= 0, a^0 = 1.
APPoly pow(const APPoly& a, int n);

// Coefficient of the zero frequency (the invariant mean).
Complex mean_value(const APPoly& p);

// Coefficient at the given frequency: mean_value(shift(p, -f)).
Complex bohr_coefficient(const APPoly& p, const Frequency& f);

// (min, max) represented frequency; nullopt for the zero series.
std::optional<std::pair<Frequency, Frequency>> spectrum_bounds(const APPoly& p);

// Pointwise value sum_j c_j exp(i f_j z) at a complex argument.
Complex eval(const APPoly& p, Complex z);

// Multiplication by e_gamma: adds gamma to every frequency.
APPoly shift(const APPoly& p, const Frequency& gamma);

struct SplitResult {
  APPoly lower;  // frequencies below the threshold
  APPoly upper;  // frequencies above the threshold
};

// Splits around tau. The boundary term (frequency == tau), when present,
// goes to upper when boundary_in_upper is set, otherwise to lower.
// lower + upper reassembles p exactly.
SplitResult split_at(const APPoly& p, const Frequency& tau,
                     bool boundary_in_upper);

// Truncated geometric inverse of a dominant two-term series
// p = c1 e_{a1} + c2 e_{a2} with |c2| < |c1|:
//   q = (1/c1) e_{-a1} sum_{n=0}^{N} (-c2/c1)^n e_{n (a2-a1)}
// with N chosen as the smallest integer whose geometric tail bound
// r^{N+1} / (1-r), r = |c2/c1|, is at most tol. Throws
// NotDominantBinomial when p is not such a series and
// TruncationBudgetExceeded when more than max_terms terms would be needed.
APPoly neumann_inverse(const APPoly& p, double tol, int max_terms);

// Largest |coefficient| of a - b over the union of their spectra.
double max_coeff_distance(const APPoly& a, const APPoly& b);

// Largest coefficient modulus; 0 for the zero series.
double max_coeff(const APPoly& p);

// Human-readable rendering, e.g. "1 - e[2/1]" or "(0.5+0.5i) e[-1/2]".
std::string to_string(const APPoly& p);

}  // namespace apfact
