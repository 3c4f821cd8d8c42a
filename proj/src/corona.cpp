#include "apfact/corona.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <initializer_list>

#include "apfact/errors.hpp"
#include "apfact/verify.hpp"

namespace apfact {

namespace {

// A condition holds when its edge equality and every required attainment
// are established; a failed equality or a refuted attainment kills it;
// an open attainment behind a true equality leaves it undecided.
Verdict decide(bool equality, std::initializer_list<Attain> required) {
  if (!equality) return Verdict::Fails;
  bool open = false;
  for (Attain a : required) {
    if (a == Attain::No) return Verdict::Fails;
    if (a == Attain::Unknown) open = true;
  }
  return open ? Verdict::Unknown : Verdict::Holds;
}

bool both_finite(const Edge& a, const Edge& b) {
  return a.is_finite() && b.is_finite();
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds:
      return "holds";
    case Verdict::Fails:
      return "fails";
    case Verdict::Unknown:
      return "unknown";
  }
  return "?";
}

CoronaVerdict spectral_corona_check(const GapData& gap, int N,
                                    const Frequency& lambda) {
  if (N < 1) throw ValidationError("condition family needs N >= 1");
  const Edge& e1p = gap.eta1_plus;
  const Edge& e1m = gap.eta1_minus;
  const Edge& e2p = gap.eta2_plus;
  const Edge& e2m = gap.eta2_minus;

  struct Row {
    const char* tag;
    Verdict v;
  };
  std::vector<Row> rows;

  if (N == 1) {
    rows.push_back(
        {"n1-edge-sum",
         decide(both_finite(e1p, e1m) && *e1p.value + *e1m.value == lambda,
                {e1p.attained, e1m.attained})});
  } else {
    const Frequency n{N};
    const Frequency n1{N - 1};
    rows.push_back(
        {"inner-edge-sum",
         decide(both_finite(e1p, e1m) && *e1p.value + *e1m.value == lambda / n,
                {e1p.attained, e1m.attained})});
    rows.push_back(
        {"plus-edges-aligned",
         decide(both_finite(e1p, e2p) && *e2p.value * n1 == *e1p.value * n,
                {e1p.attained, e2p.attained})});
    rows.push_back(
        {"minus-edges-aligned",
         decide(both_finite(e1m, e2m) && *e2m.value * n1 == *e1m.value * n,
                {e1m.attained, e2m.attained})});
    rows.push_back(
        {"outer-edge-sum",
         decide(both_finite(e2p, e2m) &&
                    (*e2p.value + *e2m.value) * n1 == lambda,
                {e2p.attained, e2m.attained})});
  }

  CoronaVerdict out;
  bool any_open = false;
  std::vector<std::string> holding, evaluated;
  for (const Row& r : rows) {
    evaluated.emplace_back(r.tag);
    if (r.v == Verdict::Holds) holding.emplace_back(r.tag);
    if (r.v == Verdict::Unknown) any_open = true;
  }
  if (!holding.empty()) {
    out.plus = out.minus = Verdict::Holds;
    out.fired_conditions = std::move(holding);
  } else if (!any_open) {
    out.plus = out.minus = Verdict::Fails;
    out.fired_conditions = std::move(evaluated);
  }
  return out;
}

CoronaVerdict strip_condition(const APPoly& g_minus, const APPoly& g_plus) {
  if (g_minus.is_single_exponential() || g_plus.is_single_exponential()) {
    CoronaVerdict v;
    v.plus = v.minus = Verdict::Holds;
    v.fired_conditions = {"single-exponential"};
    return v;
  }
  if (g_minus.term_count() == 2 && g_plus.term_count() == 2) {
    return binomial_strip_criterion(g_minus, g_plus);
  }
  CoronaVerdict v;
  v.fired_conditions = {"numeric-sample"};
  v.evidence = strip_infimum_estimate(g_minus, g_plus, 1.0, 1.0, 2000, 20);
  return v;
}

CoronaVerdict binomial_strip_criterion(const APPoly& g_minus,
                                       const APPoly& g_plus,
                                       bool irrational_ratio) {
  if (g_minus.term_count() != 2 || g_plus.term_count() != 2) {
    throw NotBinomial("root criterion needs exactly two terms per side");
  }
  // Terms are sorted by frequency: for the plus side [0] is the inner
  // edge, for the minus side [1] is (the inner edge lives closer to 0).
  const Complex c1 = g_plus.terms()[0].coeff;
  const Complex c2 = g_plus.terms()[1].coeff;
  const Complex cm1 = g_minus.terms()[1].coeff;
  const Complex cm2 = g_minus.terms()[0].coeff;
  const Frequency alpha = g_plus.terms()[1].freq - g_plus.terms()[0].freq;
  const Frequency beta = g_minus.terms()[1].freq - g_minus.terms()[0].freq;

  const Complex rp = -c1 / c2;    // value of e_alpha at any plus-side zero
  const Complex rm = -cm2 / cm1;  // value of e_beta at any minus-side zero

  bool common_zero = false;
  if (irrational_ratio) {
    // Incommensurable gap widths: the zero heights alone decide, since
    // the arguments then come arbitrarily close along the lattices.
    const double lhs = beta.to_double() * std::log(std::abs(rp));
    const double rhs = alpha.to_double() * std::log(std::abs(rm));
    common_zero = std::abs(lhs - rhs) <=
                  1e-12 * std::max({1.0, std::abs(lhs), std::abs(rhs)});
  } else {
    // alpha/beta = p/q in lowest terms; the lattices meet iff
    // rp^q = rm^p. Compared in log-polar form to keep large p, q stable.
    const Frequency ratio = alpha / beta;
    const double p = static_cast<double>(ratio.num());
    const double q = static_cast<double>(ratio.den());
    const double lmod = q * std::log(std::abs(rp)) - p * std::log(std::abs(rm));
    constexpr double two_pi = 6.283185307179586476925286766559;
    const double larg =
        std::remainder(q * std::arg(rp) - p * std::arg(rm), two_pi);
    common_zero = std::abs(lmod) <= 1e-12 * std::max(1.0, q + p) &&
                  std::abs(larg) <= 1e-12 * std::max(1.0, q + p);
  }

  CoronaVerdict v;
  v.plus = v.minus = common_zero ? Verdict::Fails : Verdict::Holds;
  v.fired_conditions = {"binomial-roots"};
  return v;
}

CoronaPair corona_pair(const APPoly& omega1, const APPoly& omega2,
                       HalfPlane side, double tol) {
  if (tol <= 0) throw ValidationError("corona tolerance must be positive");
  for (const APPoly* p : {&omega1, &omega2}) {
    if (auto sb = spectrum_bounds(*p)) {
      const bool ok = side == HalfPlane::Plus ? sb->first >= Frequency(0)
                                              : sb->second <= Frequency(0);
      if (!ok) {
        throw ValidationError(std::string("component spectrum leaves the ") +
                              to_string(side) + " half-line");
      }
    }
  }

  CoronaPair pair;
  if (omega1.is_constant() && !omega1.is_zero()) {
    pair.h1 = APPoly{Complex(1, 0) / omega1.terms()[0].coeff};
    return pair;
  }
  if (omega2.is_constant() && !omega2.is_zero()) {
    pair.h2 = APPoly{Complex(1, 0) / omega2.terms()[0].coeff};
    return pair;
  }

  // Inverting a two-term component keeps the result on the half-line only
  // when the dominant term sits at frequency 0, the extreme frequency for
  // either half-plane.
  auto invertible_binomial = [&](const APPoly& p) {
    if (p.term_count() != 2) return false;
    const Term& extreme =
        side == HalfPlane::Plus ? p.terms()[0] : p.terms()[1];
    const Term& other = side == HalfPlane::Plus ? p.terms()[1] : p.terms()[0];
    return extreme.freq.is_zero() &&
           std::abs(other.coeff) < std::abs(extreme.coeff);
  };
  if (invertible_binomial(omega1)) {
    pair.h1 = neumann_inverse(omega1, tol, 512);
    pair.residual_bound = tol;
    return pair;
  }
  if (invertible_binomial(omega2)) {
    pair.h2 = neumann_inverse(omega2, tol, 512);
    pair.residual_bound = tol;
    return pair;
  }

  if (omega1.is_zero() && omega2.is_zero()) {
    throw Unsupported("cannot complete an identically zero pair");
  }
  auto interior = [&](const APPoly& p) {
    auto sb = spectrum_bounds(p);
    if (!sb) return true;  // a zero component imposes nothing
    return side == HalfPlane::Plus ? sb->first > Frequency(0)
                                   : sb->second < Frequency(0);
  };
  if (interior(omega1) && interior(omega2)) {
    throw CoronaConditionFails(
        "every component decays at infinity in the half-plane, so the pair "
        "has no bounded completion");
  }
  throw Unsupported("no structured completion rule applies to this pair");
}

Mat2 build_H(const Vec2& psi, const CoronaPair& h,
             const Frequency& delta_tilde, HalfPlane side) {
  if (delta_tilde.sign() < 0) {
    throw ValidationError("diagonal exponent must be nonnegative");
  }
  Mat2 H;
  if (side == HalfPlane::Plus) {
    H.e11 = shift(psi.c1, -delta_tilde);
    H.e21 = shift(psi.c2, -delta_tilde);
  } else {
    H.e11 = psi.c1;
    H.e21 = psi.c2;
  }
  H.e12 = -h.h2;
  H.e22 = h.h1;

  // det(H) = psi1*h1 + psi2*h2, so any deviation from 1 is exactly the
  // truncation term of the geometric completion and is bounded by the
  // residual the pair carries.  Exact pairs must hit 1 to rounding.
  const double dtol =
      h.residual_bound > 0 ? std::max(1e-10, 2 * h.residual_bound) : 1e-12;
  const double dev = max_coeff_distance(det(H), APPoly{1.0});
  if (dev > dtol) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3e", dev);
    throw DeterminantNotOne(std::string("determinant deviates from 1 by ") +
                            buf);
  }
  const VerificationReport audit = spectrum_sign_audit(H, side);
  if (!audit.all_passed()) {
    for (const auto& c : audit.checks) {
      if (!c.pass) {
        throw SpectrumSignViolation(c.name + ": " + c.detail);
      }
    }
  }
  return H;
}

}  // namespace apfact
