#pragma once

#include <stdexcept>
#include <string>

namespace apfact {

// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Exact rational arithmetic left the 64-bit range.
struct OverflowError : Error {
  using Error::Error;
};

// Malformed textual or JSON input.
struct ParseError : Error {
  using Error::Error;
};

// Structurally valid input that violates a documented precondition.
struct ValidationError : Error {
  using Error::Error;
};

// neumann_inverse: the input is not a two-term series with a strictly
// dominant coefficient.
struct NotDominantBinomial : Error {
  using Error::Error;
};

// neumann_inverse: meeting the tolerance needs more terms than allowed.
struct TruncationBudgetExceeded : Error {
  using Error::Error;
};

// Declared spectral edges contradict the represented terms.
struct InconsistentDeclaration : Error {
  using Error::Error;
};

// Classification requires a symbol without a zero-frequency term.
struct ZeroFrequencyPresent : Error {
  using Error::Error;
};

// A requested exponent rebinding fell outside the admissible interval.
struct NuOutOfInterval : Error {
  using Error::Error;
};

// solve_biggap: the offset parameter is outside its admissible range.
struct NuOutOfRange : Error {
  using Error::Error;
};

// The two spectral edges do not clear the full interval length.
struct NotBigGap : Error {
  using Error::Error;
};

// Off-diagonal entry does not have the single-exponential lower part the
// exponential-form classifier requires.
struct FormMismatch : Error {
  using Error::Error;
};

// A solution or factor failed one of its defining identities.
struct InvariantViolation : Error {
  using Error::Error;
};

// A candidate solution is identically zero.
struct ZeroSolution : Error {
  using Error::Error;
};

// The joint-zero criterion needs two-term data on both sides.
struct NotBinomial : Error {
  using Error::Error;
};

// No structured Bezout rule applies to the given pair.
struct Unsupported : Error {
  using Error::Error;
};

// A cheap certificate shows the pair cannot satisfy the corona condition.
struct CoronaConditionFails : Error {
  using Error::Error;
};

// build_H: the assembled matrix does not have unit determinant.
struct DeterminantNotOne : Error {
  using Error::Error;
};

// An entry's spectrum leaves its required half-line.
struct SpectrumSignViolation : Error {
  using Error::Error;
};

// construct_factorization: no Bezout pair could be built for a column.
struct CoronaUnsupported : Error {
  using Error::Error;
};

// construct_factorization: the assembled factors do not reproduce the
// symbol within tolerance.
struct ReconstructionFailure : Error {
  using Error::Error;
};

// grid_residual: a factor is numerically singular at a sample point.
struct SingularFactor : Error {
  using Error::Error;
};

// canonical_equivalence: the two factorizations are not related by a
// constant right factor.
struct NotEquivalent : Error {
  using Error::Error;
};

}  // namespace apfact
