#include "apfact/factorize.hpp"

#include <algorithm>
#include <cmath>
#include <variant>

#include "apfact/errors.hpp"
#include "apfact/verify.hpp"

namespace apfact {

namespace {

Verdict attain_pair(Attain a, Attain b) {
  if (a == Attain::No || b == Attain::No) return Verdict::Fails;
  if (a == Attain::Unknown || b == Attain::Unknown) return Verdict::Unknown;
  return Verdict::Holds;
}

bool fully_represented(const GapData& gap) {
  return edges_match_spectrum(gap.g_plus, gap.eta1_plus, gap.eta2_plus,
                              false) &&
         edges_match_spectrum(gap.g_minus, gap.eta1_minus, gap.eta2_minus,
                              true);
}

IndexResult make_index(IndexStatus st, const Frequency& mu, std::string tag) {
  IndexResult r;
  r.status = st;
  if (st == IndexStatus::Canonical || st == IndexStatus::NonCanonical) {
    r.mu = mu;
    r.delta1 = -mu;
    r.delta2 = mu;
  }
  r.case_tag = std::move(tag);
  return r;
}

// The edges describe a single exponential c e_{-sigma} exactly: both minus
// edges finite, equal, and attained.
bool single_exponential_minus(const GapData& gap) {
  return gap.eta1_minus.is_finite() && gap.eta2_minus.is_finite() &&
         *gap.eta1_minus.value == *gap.eta2_minus.value &&
         gap.eta1_minus.attained == Attain::Yes &&
         gap.eta2_minus.attained == Attain::Yes;
}

double mat_scale(const Mat2& m) {
  return std::max({1.0, max_coeff(m.e11), max_coeff(m.e12), max_coeff(m.e21),
                   max_coeff(m.e22)});
}

double mat_distance(const Mat2& a, const Mat2& b) {
  return std::max({max_coeff_distance(a.e11, b.e11),
                   max_coeff_distance(a.e12, b.e12),
                   max_coeff_distance(a.e21, b.e21),
                   max_coeff_distance(a.e22, b.e22)});
}

}  // namespace

const char* to_string(IndexStatus s) {
  switch (s) {
    case IndexStatus::Canonical:
      return "canonical";
    case IndexStatus::NonCanonical:
      return "non-canonical";
    case IndexStatus::NotAPFactorable:
      return "not-ap-factorable";
    case IndexStatus::Unknown:
      return "unknown";
  }
  return "?";
}

const char* to_string(OperatorClass c) {
  switch (c) {
    case OperatorClass::Invertible:
      return "invertible";
    case OperatorClass::FactorableNonCanonical:
      return "factorable-non-canonical";
    case OperatorClass::NotSemiFredholm:
      return "not-semi-fredholm";
    case OperatorClass::NotAPFactorable:
      return "not-ap-factorable";
    case OperatorClass::Unknown:
      return "unknown";
  }
  return "?";
}

IndexResult indices_biggap(const GapData& gap, const Frequency& lambda) {
  const Edge& e1p = gap.eta1_plus;
  const Edge& e1m = gap.eta1_minus;
  if (e1p.is_finite() && e1m.is_finite() &&
      *e1p.value + *e1m.value < lambda) {
    throw NotBigGap("two-sided gap " + (*e1p.value + *e1m.value).str() +
                    " is below the interval length " + lambda.str());
  }

  // Factorable iff each inner edge is attained or clears lambda.
  auto side = [&](const Edge& e) {
    if (!e.is_finite() || *e.value >= lambda) return Verdict::Holds;
    if (e.attained == Attain::Yes) return Verdict::Holds;
    if (e.attained == Attain::No) return Verdict::Fails;
    return Verdict::Unknown;
  };
  const Verdict vp = side(e1p);
  const Verdict vm = side(e1m);
  if (vp == Verdict::Fails || vm == Verdict::Fails) {
    return make_index(IndexStatus::NotAPFactorable, Frequency(0),
                      "endpoint-missing");
  }
  if (vp == Verdict::Unknown || vm == Verdict::Unknown) {
    return make_index(IndexStatus::Unknown, Frequency(0),
                      "undecided-endpoint");
  }

  Frequency mu = lambda;
  if (e1p.is_finite()) mu = min(mu, *e1p.value);
  if (e1m.is_finite()) mu = min(mu, *e1m.value);
  if (e1p.is_finite() && e1m.is_finite()) {
    mu = min(mu, *e1p.value + *e1m.value - lambda);
  }
  IndexResult r = make_index(
      mu.is_zero() ? IndexStatus::Canonical : IndexStatus::NonCanonical, mu,
      "gap-minimum");

  if (fully_represented(gap)) {
    const Frequency lo = e1m.is_finite()
                             ? max(Frequency(0), lambda - *e1m.value)
                             : Frequency(0);
    const RHSolution sol = solve_biggap(gap, lambda, lo);
    const ReducedSolution red = exponential_reduction(sol, gap, lambda);
    if (red.mu != mu) {
      throw InvariantViolation("reduced index " + red.mu.str() +
                               " disagrees with the gap minimum " + mu.str());
    }
    r.first_columns = std::make_pair(red.psi_minus, red.psi_plus);
  }
  return r;
}

IndexResult indices_structured(const GapData& gap, const Frequency& lambda,
                               int N, const CoronaVerdict& strip) {
  if (N <= 1) {
    throw ValidationError("structured index computation needs N > 1");
  }
  if (strip.combined() != Verdict::Holds) {
    return make_index(IndexStatus::Unknown, Frequency(0),
                      strip.combined() == Verdict::Fails ? "strip-failed"
                                                         : "strip-undecided");
  }
  for (const Edge* e :
       {&gap.eta1_plus, &gap.eta1_minus, &gap.eta2_plus, &gap.eta2_minus}) {
    if (!e->is_finite()) {
      throw ValidationError("membership edges must be finite");
    }
  }
  const Frequency p1 = *gap.eta1_plus.value;
  const Frequency m1 = *gap.eta1_minus.value;
  const Frequency p2 = *gap.eta2_plus.value;
  const Frequency m2 = *gap.eta2_minus.value;
  const Frequency n{N};
  const Frequency n1{N - 1};
  const Frequency L = n * p1 + n1 * m2;
  const Frequency R = n * m1 + n1 * p2;

  struct Case {
    const char* tag;
    bool window;
    Verdict att;
    Frequency mu;
  };
  const Case cases[] = {
      {"inner-pair", lambda >= L && lambda >= R,
       attain_pair(gap.eta1_plus.attained, gap.eta1_minus.attained),
       n * (p1 + m1) - lambda},
      {"plus-pair", L <= lambda && lambda <= R,
       attain_pair(gap.eta1_plus.attained, gap.eta2_plus.attained),
       n * p1 - n1 * p2},
      {"minus-pair", R <= lambda && lambda <= L,
       attain_pair(gap.eta1_minus.attained, gap.eta2_minus.attained),
       n * m1 - n1 * m2},
      {"outer-pair", lambda <= L && lambda <= R,
       attain_pair(gap.eta2_plus.attained, gap.eta2_minus.attained),
       lambda - n1 * (p2 + m2)},
  };

  std::optional<Frequency> mu;
  const char* tag = nullptr;
  bool undecided = false;
  for (const Case& c : cases) {
    if (!c.window || c.att == Verdict::Fails) continue;
    if (c.att == Verdict::Unknown) {
      undecided = true;
      continue;
    }
    if (mu) {
      // Cases fire together only on window boundaries, where their values
      // provably coincide.
      if (*mu != c.mu) {
        throw InvariantViolation(std::string("cases ") + tag + " and " +
                                 c.tag + " disagree: " + mu->str() + " vs " +
                                 c.mu.str());
      }
    } else {
      mu = c.mu;
      tag = c.tag;
    }
  }
  if (!mu) {
    return make_index(IndexStatus::Unknown, Frequency(0),
                      undecided ? "undecided-attainment" : "no-case-fired");
  }
  if (mu->sign() < 0) {
    throw InvariantViolation("negative index " + mu->str() +
                             " from a structured membership");
  }
  IndexResult r = make_index(
      mu->is_zero() ? IndexStatus::Canonical : IndexStatus::NonCanonical, *mu,
      tag);

  if (fully_represented(gap)) {
    TriangularSymbol sym{lambda, gap.g_minus + gap.g_plus, std::nullopt};
    ClassifyResult cr = classify(sym);
    const auto* mem = std::get_if<ClassMembership>(&cr);
    if (!mem || mem->N != N) {
      throw InvariantViolation("gap data is not a representation of an N=" +
                               std::to_string(N) + " membership");
    }
    const RHSolution sol = solve_structured(*mem, lambda);
    const ReducedSolution red = exponential_reduction(sol, gap, lambda);
    if (red.mu != *mu) {
      throw InvariantViolation("reduced index " + red.mu.str() +
                               " disagrees with the fired case value " +
                               mu->str());
    }
    r.first_columns = std::make_pair(red.psi_minus, red.psi_plus);
  }
  return r;
}

ToeplitzVerdict classify_toeplitz(const TriangularSymbol& sym,
                                  bool apw_flag) {
  ToeplitzVerdict out;
  out.only_if = apw_flag || !sym.declared_gaps.has_value();
  const GapData gap = decompose(sym);
  const Frequency lambda = sym.lambda;

  if (gap.has_zero_frequency) {
    if (auto sol = solve_one_sided(sym)) {
      out.verdict = OperatorClass::Invertible;
      out.mu = Frequency(0);
      out.rules = {"one-sided-solution"};
      out.detail =
          "explicit bounded solution pair at offset " + sol->used_nu.str();
    } else {
      out.detail =
          "zero-frequency term present but neither one-sided form applies";
    }
    return out;
  }

  std::optional<ClassMembership> mem;
  if (!sym.g.is_zero()) {
    ClassifyResult cr = classify(sym);
    if (const auto* nc = std::get_if<NotInClass>(&cr)) {
      out.detail = "outside the structured class: " + nc->violated;
      return out;
    }
    mem = std::get<ClassMembership>(cr);
  }

  if (!mem || mem->N == 1) {
    const IndexResult idx = indices_biggap(gap, lambda);
    const bool single_minus = single_exponential_minus(gap);
    const bool plus_finite = gap.eta1_plus.is_finite();
    const Frequency edge_sum =
        single_minus && plus_finite ? *gap.eta1_minus.value +
                                          *gap.eta1_plus.value
                                    : Frequency(0);
    switch (idx.status) {
      case IndexStatus::NotAPFactorable:
        out.verdict = OperatorClass::NotAPFactorable;
        out.rules = {"endpoint-missing"};
        out.only_if = true;  // this direction is exact, no algebra caveat
        out.detail = "an inner edge below the interval length is not attained";
        return out;
      case IndexStatus::Canonical:
        out.verdict = OperatorClass::Invertible;
        out.mu = Frequency(0);
        out.rules = {"canonical-index"};
        if (single_minus && plus_finite && edge_sum == lambda &&
            gap.eta1_plus.attained == Attain::Yes) {
          out.rules.push_back("edge-sum-equality");
        }
        out.detail = "canonical factorization from the gap minimum";
        return out;
      case IndexStatus::NonCanonical:
        out.verdict = OperatorClass::FactorableNonCanonical;
        out.mu = idx.mu;
        out.not_semi_fredholm = true;
        out.rules = {"positive-index", "transposition-symmetry"};
        if (single_minus && plus_finite && edge_sum > lambda) {
          out.rules.push_back("edge-sum-exceeds");
        }
        out.detail = "factorization with indices -" + idx.mu.str() + ", +" +
                     idx.mu.str();
        return out;
      case IndexStatus::Unknown:
        if (single_minus && plus_finite && edge_sum > lambda) {
          out.verdict = OperatorClass::NotSemiFredholm;
          out.not_semi_fredholm = true;
          out.rules = {"edge-sum-exceeds", "transposition-symmetry"};
          out.detail = "edge sum " + edge_sum.str() +
                       " exceeds the interval length " + lambda.str();
          return out;
        }
        out.detail = "inner-edge attainment left undecided by declarations";
        return out;
    }
  }

  const int N = mem->N;
  const CoronaVerdict spectral = spectral_corona_check(gap, N, lambda);
  const CoronaVerdict strip = strip_condition(gap.g_minus, gap.g_plus);
  out.conditions = spectral.fired_conditions;
  out.conditions.insert(out.conditions.end(), strip.fired_conditions.begin(),
                        strip.fired_conditions.end());

  if (spectral.combined() == Verdict::Holds &&
      strip.combined() == Verdict::Holds) {
    out.verdict = OperatorClass::Invertible;
    out.mu = Frequency(0);
    out.rules = {"corona-and-strip"};
    out.detail = "both corona conditions certified";
    return out;
  }

  const IndexResult idx = indices_structured(gap, lambda, N, strip);
  if (idx.status == IndexStatus::Canonical) {
    out.verdict = OperatorClass::Invertible;
    out.mu = Frequency(0);
    out.rules = {"canonical-index"};
    out.detail = "canonical factorization from a closed-form case";
    return out;
  }
  if (idx.status == IndexStatus::NonCanonical) {
    out.verdict = OperatorClass::FactorableNonCanonical;
    out.mu = idx.mu;
    out.not_semi_fredholm = true;
    out.rules = {"positive-index", "transposition-symmetry"};
    out.detail = "case " + idx.case_tag + " fired with index " +
                 idx.mu.str();
    return out;
  }

  if (single_exponential_minus(gap) && mem->nu_min < mem->nu_max) {
    // With a one-term minus part, a nondegenerate offset window admits a
    // strictly interior offset on one side, forcing an infinite kernel;
    // the transposition identity then kills the cokernel too.
    out.verdict = OperatorClass::NotSemiFredholm;
    out.not_semi_fredholm = true;
    out.rules = {"offset-window-open", "transposition-symmetry"};
    out.detail = "admissible offsets form the nondegenerate interval [" +
                 mem->nu_min.str() + ", " + mem->nu_max.str() + "]";
    return out;
  }

  out.detail = "no decision rule fired (" + idx.case_tag + ")";
  return out;
}

Factorization construct_factorization(const TriangularSymbol& sym,
                                      const RHSolution& sol, double tol) {
  if (tol <= 0) throw ValidationError("tolerance must be positive");
  const GapData gap = decompose(sym);
  const ReducedSolution red = exponential_reduction(sol, gap, sym.lambda);
  const Frequency delta = red.mu;

  CoronaPair hp, hm;
  try {
    hp = corona_pair(red.psi_plus.c1, red.psi_plus.c2, HalfPlane::Plus, tol);
    hm = corona_pair(red.psi_minus.c1, red.psi_minus.c2, HalfPlane::Minus,
                     tol);
  } catch (const CoronaConditionFails& e) {
    throw CoronaUnsupported(std::string("corona condition refuted: ") +
                            e.what());
  } catch (const Unsupported& e) {
    throw CoronaUnsupported(std::string("no completion rule: ") + e.what());
  }

  const Vec2 psi_plus{shift(red.psi_plus.c1, delta),
                      shift(red.psi_plus.c2, delta)};
  const Mat2 Hp = build_H(psi_plus, hp, delta, HalfPlane::Plus);
  const Mat2 Hm = build_H(red.psi_minus, hm, delta, HalfPlane::Minus);

  const Mat2 G = symbol_matrix(sym);
  const Mat2 G1 = adjugate(Hm) * G * Hp;

  const double trunc = hp.residual_bound + hm.residual_bound;
  const double struct_tol = trunc > 0 ? std::max(1e-8, 10 * trunc) : 1e-10;
  const APPoly ed_minus = APPoly::exponential(-delta);
  const APPoly ed_plus = APPoly::exponential(delta);
  if (max_coeff_distance(G1.e11, ed_minus) > struct_tol ||
      max_coeff_distance(G1.e21, APPoly{}) > struct_tol ||
      max_coeff_distance(G1.e22, ed_plus) > struct_tol) {
    throw ReconstructionFailure(
        "conjugated symbol is not upper triangular with the expected "
        "diagonal");
  }

  // Split the off-diagonal entry: g' = s_- e_{-delta} + s_+ e_{-delta}
  // with s = g' e_delta; frequencies >= 0 of s go right, the rest left.
  const SplitResult parts = split_at(shift(G1.e12, delta), Frequency(0), true);
  Mat2 Lm = Mat2::identity();
  Lm.e12 = shift(parts.lower, -(delta + delta));
  Mat2 Lp = Mat2::identity();
  Lp.e12 = -parts.upper;

  Factorization fac;
  fac.G_minus = Hm * Lm;
  fac.G_plus = Hp * Lp;
  fac.D_exponents = {-delta, delta};
  fac.truncation_residual = trunc;

  for (const auto& [factor, side, psi] :
       {std::tuple<const Mat2&, HalfPlane, const Vec2&>{
            fac.G_minus, HalfPlane::Minus, red.psi_minus},
        std::tuple<const Mat2&, HalfPlane, const Vec2&>{
            fac.G_plus, HalfPlane::Plus, red.psi_plus}}) {
    if (!spectrum_sign_audit(factor, side).all_passed()) {
      throw ReconstructionFailure(std::string("factor entries leave the ") +
                                  to_string(side) + " half-line");
    }
    const APPoly d = det(factor);
    const Complex c = mean_value(d);
    if (max_coeff_distance(d, APPoly{c}) > struct_tol) {
      throw ReconstructionFailure("factor determinant is not constant");
    }
    if (std::abs(c) < 1e-13) {
      throw SingularFactor("factor determinant vanishes");
    }
    const Vec2 col = factor.column(0);
    if (max_coeff_distance(col.c1, psi.c1) > 1e-14 ||
        max_coeff_distance(col.c2, psi.c2) > 1e-14) {
      throw InvariantViolation(
          "first factor column deviates from the reduced solution");
    }
  }

  // Symbolic reconstruction: G_minus D adj(G_plus) = det(G_plus) G.
  Mat2 D = Mat2::identity();
  D.e11 = ed_minus;
  D.e22 = ed_plus;
  const Complex dp = mean_value(det(fac.G_plus));
  const Mat2 lhs = fac.G_minus * (D * adjugate(fac.G_plus));
  Mat2 rhs;
  rhs.e11 = dp * G.e11;
  rhs.e12 = dp * G.e12;
  rhs.e21 = dp * G.e21;
  rhs.e22 = dp * G.e22;
  const double scale = std::max(mat_scale(lhs), mat_scale(rhs));
  const double allowed = std::max(tol, struct_tol) * scale;
  if (mat_distance(lhs, rhs) > allowed) {
    throw ReconstructionFailure("rebuilt product deviates from the symbol by " +
                                std::to_string(mat_distance(lhs, rhs)));
  }
  const VerificationReport rep = grid_residual(sym, fac, 100);
  if (rep.max_residual > allowed) {
    throw ReconstructionFailure("pointwise residual " +
                                std::to_string(rep.max_residual) +
                                " exceeds the tolerance");
  }
  return fac;
}

CMat2 canonical_equivalence(const Factorization& f1, const Factorization& f2) {
  for (const Factorization* f : {&f1, &f2}) {
    if (!f->D_exponents.first.is_zero() || !f->D_exponents.second.is_zero()) {
      throw ValidationError(
          "equivalence is defined between canonical factorizations");
    }
  }

  auto constant_ratio = [](const Mat2& a, const Mat2& b) {
    const Complex da = mean_value(det(a));
    if (std::abs(da) < 1e-13) {
      throw SingularFactor("factor determinant vanishes");
    }
    const Mat2 prod = adjugate(a) * b;
    const APPoly* entries[2][2] = {{&prod.e11, &prod.e12},
                                   {&prod.e21, &prod.e22}};
    CMat2 z;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        const APPoly& e = *entries[i][j];
        const Complex c = mean_value(e);
        if (max_coeff_distance(e, APPoly{c}) >
            1e-10 * std::max(1.0, max_coeff(e))) {
          throw NotEquivalent("ratio entry (" + std::to_string(i + 1) + "," +
                              std::to_string(j + 1) + ") is not constant");
        }
        z[i][j] = c / da;
      }
    }
    return z;
  };

  const CMat2 zp = constant_ratio(f1.G_plus, f2.G_plus);
  const CMat2 zm = constant_ratio(f1.G_minus, f2.G_minus);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      if (std::abs(zp[i][j] - zm[i][j]) >
          1e-10 * std::max(1.0, std::abs(zp[i][j]))) {
        throw NotEquivalent(
            "plus and minus factors are related by different constants");
      }
    }
  }
  return zp;
}

bool mean_motion_balance(const IndexResult& result) {
  return (result.delta1 + result.delta2).is_zero();
}

Mat2 transposed_inverse_symbol(const TriangularSymbol& sym) {
  Mat2 m;
  m.e11 = APPoly::exponential(sym.lambda);
  m.e12 = -sym.g;
  m.e21 = APPoly{};
  m.e22 = APPoly::exponential(-sym.lambda);
  return m;
}

}  // namespace apfact
