#include "apfact/symbol.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "apfact/errors.hpp"

namespace apfact {

namespace {

void require_halfline(const APPoly& p, HalfPlane hp, const char* what) {
  auto sb = spectrum_bounds(p);
  if (!sb) return;
  const bool ok = hp == HalfPlane::Plus ? sb->first >= Frequency(0)
                                        : sb->second <= Frequency(0);
  if (!ok) {
    throw InvariantViolation(std::string(what) + " spectrum leaves the " +
                             to_string(hp) + " half-line");
  }
}

// Applies one declared override to an inner edge (distance of the spectrum
// of `side` from the origin). Declared inner edges may only move toward
// zero: a truncation can hide terms closer to the origin, never reveal a
// wider gap than the represented terms allow.
void apply_inner(Edge& edge, const std::optional<DeclaredSpectrum::Entry>& entry,
                 const char* name) {
  if (!entry) {
    if (edge.is_finite()) edge.attained = Attain::Unknown;
    return;
  }
  if (!entry->value) {
    if (edge.is_finite()) {
      throw InconsistentDeclaration(std::string(name) +
                                    " declared infinite but terms are present");
    }
    edge = Edge{std::nullopt, Attain::Yes};
    return;
  }
  const Frequency& v = *entry->value;
  if (v.sign() < 0) {
    throw InconsistentDeclaration(std::string(name) +
                                  " declared negative: " + v.str());
  }
  if (v.is_zero() && entry->attained == Attain::Yes) {
    throw InconsistentDeclaration(
        std::string(name) + " = 0 cannot be attained; the zero-frequency "
                            "coefficient is tracked separately");
  }
  if (edge.is_finite() && v > *edge.value) {
    throw InconsistentDeclaration(std::string(name) + " declared as " +
                                  v.str() + " but a term sits at distance " +
                                  edge.value->str());
  }
  edge = Edge{v, entry->attained};
}

// Outer edges may only move away from zero (or to infinity) for the same
// truncation reason.
void apply_outer(Edge& edge, const std::optional<DeclaredSpectrum::Entry>& entry,
                 bool side_empty, const char* name) {
  if (!entry) {
    if (edge.is_finite()) edge.attained = Attain::Unknown;
    return;
  }
  if (!entry->value) {
    edge = Edge{std::nullopt, Attain::No};
    return;
  }
  const Frequency& v = *entry->value;
  if (v.sign() < 0) {
    throw InconsistentDeclaration(std::string(name) +
                                  " declared negative: " + v.str());
  }
  if (!side_empty && edge.is_finite() && v < *edge.value) {
    throw InconsistentDeclaration(std::string(name) + " declared as " +
                                  v.str() + " but a term sits at distance " +
                                  edge.value->str());
  }
  edge = Edge{v, entry->attained};
}

void check_side(const Edge& inner, const Edge& outer, bool side_empty,
                const char* side) {
  if (inner.is_finite() && outer.is_finite() && *inner.value > *outer.value) {
    throw InconsistentDeclaration(std::string(side) + " edges cross: inner " +
                                  inner.value->str() + " > outer " +
                                  outer.value->str());
  }
  if (!inner.is_finite() && outer.is_finite()) {
    throw InconsistentDeclaration(std::string(side) +
                                  " outer edge declared without an inner edge");
  }
  // An empty side with a declared finite outer edge needs the inner edge
  // declared too; otherwise the inner distance is unknowable.
  (void)side_empty;
}

Frequency scaled(std::int64_t num, std::int64_t den, const Frequency& f) {
  return Frequency(num, den) * f;
}

// The four inequalities pinning the admissible interval for N > 1 coincide
// with the class conditions, so the interval is built only after they pass.
struct Window {
  Frequency lo, hi;
};

}  // namespace

Mat2 symbol_matrix(const TriangularSymbol& sym) {
  Mat2 m;
  m.e11 = APPoly::exponential(-sym.lambda);
  m.e12 = APPoly{};
  m.e21 = sym.g;
  m.e22 = APPoly::exponential(sym.lambda);
  return m;
}

bool edges_match_spectrum(const APPoly& side, const Edge& inner,
                          const Edge& outer, bool minus_side) {
  auto sb = spectrum_bounds(side);
  if (!sb) return !inner.is_finite() && !outer.is_finite();
  const Frequency repr_inner = minus_side ? -sb->second : sb->first;
  const Frequency repr_outer = minus_side ? -sb->first : sb->second;
  return inner.is_finite() && outer.is_finite() &&
         *inner.value == repr_inner && *outer.value == repr_outer &&
         inner.attained == Attain::Yes && outer.attained == Attain::Yes;
}

GapData decompose(const TriangularSymbol& sym) {
  if (!(sym.lambda > Frequency(0))) {
    throw ValidationError("interval length must be positive, got " +
                          sym.lambda.str());
  }
  std::vector<Term> lower, upper;
  Complex zero{0.0, 0.0};
  for (const Term& t : sym.g.terms()) {
    if (t.freq.sign() < 0) {
      lower.push_back(t);
    } else if (t.freq.sign() > 0) {
      upper.push_back(t);
    } else {
      zero = t.coeff;
    }
  }

  GapData gap;
  gap.g_minus = APPoly::from_terms(std::move(lower));
  gap.g_plus = APPoly::from_terms(std::move(upper));
  gap.zero_coeff = zero;
  gap.has_zero_frequency = std::abs(zero) > APPoly::coeff_zero_tol;

  if (auto sb = spectrum_bounds(gap.g_plus)) {
    gap.eta1_plus = Edge{sb->first, Attain::Yes};
    gap.eta2_plus = Edge{sb->second, Attain::Yes};
  } else {
    gap.eta1_plus = Edge{std::nullopt, Attain::Yes};
    gap.eta2_plus = Edge{std::nullopt, Attain::Yes};
  }
  if (auto sb = spectrum_bounds(gap.g_minus)) {
    gap.eta1_minus = Edge{-sb->second, Attain::Yes};
    gap.eta2_minus = Edge{-sb->first, Attain::Yes};
  } else {
    gap.eta1_minus = Edge{std::nullopt, Attain::Yes};
    gap.eta2_minus = Edge{std::nullopt, Attain::Yes};
  }

  if (sym.declared_gaps) {
    const DeclaredSpectrum& d = *sym.declared_gaps;
    apply_inner(gap.eta1_plus, d.eta1_plus, "eta1_plus");
    apply_outer(gap.eta2_plus, d.eta2_plus, gap.g_plus.is_zero(), "eta2_plus");
    apply_inner(gap.eta1_minus, d.eta1_minus, "eta1_minus");
    apply_outer(gap.eta2_minus, d.eta2_minus, gap.g_minus.is_zero(),
                "eta2_minus");
    check_side(gap.eta1_plus, gap.eta2_plus, gap.g_plus.is_zero(), "plus");
    check_side(gap.eta1_minus, gap.eta2_minus, gap.g_minus.is_zero(), "minus");
  }
  return gap;
}

ClassifyResult classify(const TriangularSymbol& sym) {
  const GapData gap = decompose(sym);
  if (gap.has_zero_frequency) {
    throw ZeroFrequencyPresent(
        "off-diagonal entry carries a zero-frequency term; use the "
        "zero-frequency reduction instead");
  }
  if (gap.g_minus.is_zero() && gap.g_plus.is_zero()) {
    throw ValidationError("off-diagonal entry vanishes identically");
  }

  const Frequency lambda = sym.lambda;
  ClassMembership out;
  out.lambda = lambda;
  out.eta1_minus = gap.eta1_minus;
  out.eta2_minus = gap.eta2_minus;
  out.eta1_plus = gap.eta1_plus;
  out.eta2_plus = gap.eta2_plus;

  const Edge& e1p = gap.eta1_plus;
  const Edge& e1m = gap.eta1_minus;
  const bool one_block = !e1p.is_finite() || !e1m.is_finite() ||
                         *e1p.value + *e1m.value >= lambda;

  if (one_block) {
    out.N = 1;
    out.nu_min = e1m.is_finite() ? max(Frequency(0), lambda - *e1m.value)
                                 : Frequency(0);
    out.nu_max = e1p.is_finite() ? min(*e1p.value, lambda) : lambda;
  } else {
    const Frequency sum = *e1p.value + *e1m.value;
    if (!(sum > Frequency(0))) {
      return NotInClass{"inner-gap-empty"};
    }
    const Frequency q = lambda / sum;
    const std::int64_t n64 = ceil_ratio(q.num(), q.den());
    if (n64 > std::numeric_limits<int>::max()) {
      throw OverflowError("block count " + std::to_string(n64) +
                          " exceeds the supported range");
    }
    const int N = static_cast<int>(n64);

    const Edge& e2p = gap.eta2_plus;
    const Edge& e2m = gap.eta2_minus;
    // Outer edges must be finite and close enough to the inner edges; an
    // unbounded (or undeclared-on-truncation) outer edge fails the ratio.
    if (!e2m.is_finite() || *e1m.value < scaled(N - 1, N, *e2m.value)) {
      return NotInClass{"minus-edge-ratio"};
    }
    if (!e2p.is_finite() || *e1p.value < scaled(N - 1, N, *e2p.value)) {
      return NotInClass{"plus-edge-ratio"};
    }
    if (*e2p.value + *e2m.value > lambda / Frequency(N - 1)) {
      return NotInClass{"outer-sum-bound"};
    }

    out.N = N;
    out.nu_min = max(lambda / Frequency(N) - *e1m.value,
                     scaled(N - 1, N, *e2p.value));
    out.nu_max = min(*e1p.value,
                     (lambda - Frequency(N - 1) * *e2m.value) / Frequency(N));
  }

  if (out.nu_min > out.nu_max) {
    throw InvariantViolation("admissible offset window empty after the class "
                             "conditions passed");
  }

  out.chosen_nu = out.nu_min;
  out.beta = lambda / Frequency(out.N) - out.chosen_nu;
  out.a_plus = shift(gap.g_plus, -out.chosen_nu);
  out.a_minus = shift(gap.g_minus, out.beta);
  require_halfline(out.a_plus, HalfPlane::Plus, "a_plus");
  require_halfline(out.a_minus, HalfPlane::Minus, "a_minus");
  if (out.N > 1) {
    if (!(out.chosen_nu > Frequency(0)) || !(out.beta > Frequency(0))) {
      throw InvariantViolation(
          "multi-block representation needs strictly positive offsets");
    }
    out.b_plus = shift(out.a_minus, out.beta / Frequency(out.N - 1));
    out.b_minus = shift(out.a_plus, -(out.chosen_nu / Frequency(out.N - 1)));
    require_halfline(*out.b_plus, HalfPlane::Plus, "b_plus");
    require_halfline(*out.b_minus, HalfPlane::Minus, "b_minus");
  }
  return out;
}

const char* to_string(CriterionCase c) {
  switch (c) {
    case CriterionCase::InnerEdgeSum:
      return "inner-edge-sum";
    case CriterionCase::PlusEdgesAligned:
      return "plus-edges-aligned";
    case CriterionCase::MinusEdgesAligned:
      return "minus-edges-aligned";
    case CriterionCase::OuterEdgeSum:
      return "outer-edge-sum";
  }
  return "?";
}

ClassMembership choose_nu(const ClassMembership& membership,
                          CriterionCase target) {
  if (membership.N <= 1) {
    throw ValidationError("offset rebinding applies to multi-block classes "
                          "only");
  }
  const int N = membership.N;
  const Frequency lambda = membership.lambda;
  Frequency nu;
  switch (target) {
    case CriterionCase::InnerEdgeSum:
    case CriterionCase::PlusEdgesAligned: {
      if (!membership.eta1_plus.is_finite()) {
        throw NuOutOfInterval("inner plus edge is infinite");
      }
      nu = *membership.eta1_plus.value;
      break;
    }
    case CriterionCase::MinusEdgesAligned: {
      if (!membership.eta1_minus.is_finite()) {
        throw NuOutOfInterval("inner minus edge is infinite");
      }
      nu = lambda / Frequency(N) - *membership.eta1_minus.value;
      break;
    }
    case CriterionCase::OuterEdgeSum: {
      if (!membership.eta2_plus.is_finite()) {
        throw NuOutOfInterval("outer plus edge is infinite");
      }
      nu = scaled(N - 1, N, *membership.eta2_plus.value);
      break;
    }
  }
  if (nu < membership.nu_min || nu > membership.nu_max) {
    throw NuOutOfInterval(std::string(to_string(target)) + " pins offset " +
                          nu.str() + " outside [" + membership.nu_min.str() +
                          ", " + membership.nu_max.str() + "]");
  }

  const APPoly gp = membership.g_plus();
  const APPoly gm = membership.g_minus();
  ClassMembership out = membership;
  out.chosen_nu = nu;
  out.beta = lambda / Frequency(N) - nu;
  out.a_plus = shift(gp, -nu);
  out.a_minus = shift(gm, out.beta);
  require_halfline(out.a_plus, HalfPlane::Plus, "a_plus");
  require_halfline(out.a_minus, HalfPlane::Minus, "a_minus");
  out.b_plus = shift(out.a_minus, out.beta / Frequency(N - 1));
  out.b_minus = shift(out.a_plus, -(nu / Frequency(N - 1)));
  require_halfline(*out.b_plus, HalfPlane::Plus, "b_plus");
  require_halfline(*out.b_minus, HalfPlane::Minus, "b_minus");
  return out;
}

ClassifyResult classify_exp_form(const TriangularSymbol& sym,
                                 const Frequency& sigma) {
  if (!(sigma > Frequency(0)) || !(sigma < sym.lambda)) {
    throw ValidationError("lower exponent must lie strictly inside (0, " +
                          sym.lambda.str() + "), got " + sigma.str());
  }
  const GapData gap = decompose(sym);
  if (gap.has_zero_frequency) {
    throw ZeroFrequencyPresent(
        "off-diagonal entry carries a zero-frequency term");
  }
  if (!gap.g_minus.is_single_exponential()) {
    throw FormMismatch("lower part is not a single exponential");
  }
  if (gap.g_minus.terms().front().freq != -sigma) {
    throw FormMismatch("lower exponential sits at " +
                       gap.g_minus.terms().front().freq.str() +
                       ", expected " + (-sigma).str());
  }
  if (gap.g_plus.is_zero()) {
    throw FormMismatch("upper part vanishes identically");
  }
  if (!gap.eta1_minus.is_finite() || *gap.eta1_minus.value != sigma ||
      !gap.eta2_minus.is_finite() || *gap.eta2_minus.value != sigma) {
    throw FormMismatch("declared lower band is wider than the single "
                       "exponential");
  }

  const Frequency lambda = sym.lambda;
  const Frequency eta1p = *gap.eta1_plus.value;
  const Edge& e2p = gap.eta2_plus;

  // Window nonempty forces (N - 1) sigma <= lambda.
  const Frequency bound = lambda / sigma;
  const std::int64_t n_max = bound.num() / bound.den() + 1;

  std::optional<Window> window;
  int found_n = 0;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    Frequency lo = lambda / Frequency(n) - sigma;
    if (n > 1) {
      if (!e2p.is_finite()) continue;
      lo = max(lo, scaled(n - 1, n, *e2p.value));
    } else {
      lo = max(lo, Frequency(0));
    }
    const Frequency hi =
        min(eta1p, lambda / Frequency(n) - scaled(n - 1, n, sigma));
    if (lo <= hi) {
      window = Window{lo, hi};
      found_n = static_cast<int>(n);
      break;
    }
  }
  if (!window) {
    return NotInClass{"no-admissible-offset"};
  }

  ClassMembership out;
  out.N = found_n;
  out.lambda = lambda;
  out.nu_min = window->lo;
  out.nu_max = window->hi;
  out.chosen_nu = out.nu_min;
  out.beta = lambda / Frequency(out.N) - out.chosen_nu;
  out.a_plus = shift(gap.g_plus, -out.chosen_nu);
  out.a_minus = shift(gap.g_minus, out.beta);
  out.eta1_minus = gap.eta1_minus;
  out.eta2_minus = gap.eta2_minus;
  out.eta1_plus = gap.eta1_plus;
  out.eta2_plus = gap.eta2_plus;
  require_halfline(out.a_plus, HalfPlane::Plus, "a_plus");
  require_halfline(out.a_minus, HalfPlane::Minus, "a_minus");
  if (out.N > 1) {
    out.b_plus = shift(out.a_minus, out.beta / Frequency(out.N - 1));
    out.b_minus = shift(out.a_plus, -(out.chosen_nu / Frequency(out.N - 1)));
    require_halfline(*out.b_plus, HalfPlane::Plus, "b_plus");
    require_halfline(*out.b_minus, HalfPlane::Minus, "b_minus");
  }

  // The edge-condition route must agree: same block count, same window.
  const ClassifyResult cross = classify(sym);
  if (const auto* m = std::get_if<ClassMembership>(&cross)) {
    if (m->N != out.N || m->nu_min != out.nu_min || m->nu_max != out.nu_max) {
      throw InvariantViolation(
          "single-exponential scan disagrees with the edge conditions");
    }
  } else {
    throw InvariantViolation(
        "single-exponential scan found a window the edge conditions reject");
  }
  return out;
}

}  // namespace apfact
