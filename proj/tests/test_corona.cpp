#include <algorithm>
#include <cmath>

#include "doctest.h"

#include "apfact/corona.hpp"
#include "apfact/errors.hpp"
#include "apfact/verify.hpp"

using namespace apfact;

namespace {

APPoly e(long n, long d = 1, Complex c = Complex(1, 0)) {
  return APPoly::exponential(Frequency(n, d), c);
}

GapData gap_of(long lambda, const APPoly& g) {
  return decompose({Frequency(lambda), g, std::nullopt});
}

bool fired(const CoronaVerdict& v, const char* tag) {
  return std::find(v.fired_conditions.begin(), v.fired_conditions.end(),
                   tag) != v.fired_conditions.end();
}

}  // namespace

TEST_CASE("joint verdict combination") {
  CoronaVerdict v;
  CHECK(v.combined() == Verdict::Unknown);
  v.plus = v.minus = Verdict::Holds;
  CHECK(v.combined() == Verdict::Holds);
  v.minus = Verdict::Fails;
  CHECK(v.combined() == Verdict::Fails);
  v.minus = Verdict::Unknown;
  CHECK(v.combined() == Verdict::Unknown);
}

TEST_CASE("single-block spectral condition") {
  SUBCASE("inner edges attained and summing to lambda") {
    const CoronaVerdict v =
        spectral_corona_check(gap_of(2, e(-1) + e(1)), 1, Frequency(2));
    CHECK(v.combined() == Verdict::Holds);
    CHECK(fired(v, "n1-edge-sum"));
  }
  SUBCASE("sum short of lambda refutes") {
    const CoronaVerdict v =
        spectral_corona_check(gap_of(3, e(-1) + e(1)), 1, Frequency(3));
    CHECK(v.combined() == Verdict::Fails);
    CHECK(fired(v, "n1-edge-sum"));
  }
  SUBCASE("open attainment leaves it undecided") {
    DeclaredSpectrum ds;
    ds.eta1_plus = DeclaredSpectrum::Entry{Frequency(1), Attain::Unknown};
    const GapData gap =
        decompose({Frequency(2), e(-1) + e(1), ds});
    const CoronaVerdict v = spectral_corona_check(gap, 1, Frequency(2));
    CHECK(v.combined() == Verdict::Unknown);
    CHECK(v.fired_conditions.empty());
  }
  SUBCASE("invalid block count") {
    CHECK_THROWS_AS(
        spectral_corona_check(gap_of(2, e(-1) + e(1)), 0, Frequency(2)),
        ValidationError);
  }
}

TEST_CASE("multi-block spectral conditions") {
  SUBCASE("inner edge sum fires") {
    const CoronaVerdict v =
        spectral_corona_check(gap_of(4, e(-1) + e(1)), 2, Frequency(4));
    CHECK(v.combined() == Verdict::Holds);
    CHECK(fired(v, "inner-edge-sum"));
    CHECK_FALSE(fired(v, "plus-edges-aligned"));
  }
  SUBCASE("edge alignment fires") {
    // eta2+ = 2 = (N/(N-1)) eta1+ with N = 2, eta1+ = 1
    const CoronaVerdict v = spectral_corona_check(
        gap_of(4, e(-2) + e(-1) + e(1) + e(2)), 2, Frequency(4));
    CHECK(v.combined() == Verdict::Holds);
    CHECK(fired(v, "plus-edges-aligned"));
    CHECK(fired(v, "minus-edges-aligned"));
  }
  SUBCASE("all four refuted reports the evaluated conditions") {
    const CoronaVerdict v =
        spectral_corona_check(gap_of(5, e(-1) + e(1)), 2, Frequency(5));
    CHECK(v.combined() == Verdict::Fails);
    CHECK(v.fired_conditions.size() == 4);
  }
  SUBCASE("undecided attainment downgrades a firing condition") {
    DeclaredSpectrum ds;
    ds.eta1_plus = DeclaredSpectrum::Entry{Frequency(1), Attain::Unknown};
    const GapData gap = decompose({Frequency(4), e(-1) + e(1), ds});
    const CoronaVerdict v = spectral_corona_check(gap, 2, Frequency(4));
    CHECK(v.combined() == Verdict::Unknown);
  }
}

TEST_CASE("strip condition dispatch") {
  SUBCASE("a single-exponential side settles it") {
    const CoronaVerdict v = strip_condition(e(-1), e(1) + e(2));
    CHECK(v.combined() == Verdict::Holds);
    CHECK(fired(v, "single-exponential"));
  }
  SUBCASE("two binomials go to the root criterion") {
    const CoronaVerdict v = strip_condition(e(-2) + e(-1), e(1) + e(2));
    CHECK(v.combined() == Verdict::Fails);
    CHECK(fired(v, "binomial-roots"));
  }
  SUBCASE("anything else samples and stays undecided") {
    const CoronaVerdict v =
        strip_condition(e(-2) + e(-1), e(1) + e(3, 2) + e(2));
    CHECK(v.combined() == Verdict::Unknown);
    CHECK(fired(v, "numeric-sample"));
    REQUIRE(v.evidence.has_value());
    CHECK(*v.evidence >= 0.0);
  }
}

TEST_CASE("binomial root criterion") {
  SUBCASE("matched lattices refute, sampled infimum agrees") {
    const APPoly gm = e(-2) + e(-1), gp = e(1) + e(2);
    CHECK(binomial_strip_criterion(gm, gp).combined() == Verdict::Fails);
    CHECK(strip_infimum_estimate(gm, gp, 1, 1, 2000, 20) < 1e-2);
  }
  SUBCASE("scaled coefficient separates the lattices") {
    const APPoly gm = e(-2) + e(-1), gp = e(1) + e(2, 1, Complex(2, 0));
    CHECK(binomial_strip_criterion(gm, gp).combined() == Verdict::Holds);
    CHECK(strip_infimum_estimate(gm, gp, 1, 1, 2000, 20) > 1e-1);
  }
  SUBCASE("rational widths use the full log-polar comparison") {
    // heights match but the arguments differ: zeros never coincide
    const APPoly gm = e(-2) + e(-1);
    const APPoly gp = e(1) + e(2, 1, Complex(0, 1));
    CHECK(binomial_strip_criterion(gm, gp).combined() == Verdict::Holds);
    // with incommensurable widths the same data would be refuted
    CHECK(binomial_strip_criterion(gm, gp, true).combined() ==
          Verdict::Fails);
  }
  SUBCASE("unequal gap widths compare against scaled powers") {
    // alpha = 2, beta = 1: intersect iff rp = rm^2; rp = -1, rm = -1 -> no
    const CoronaVerdict v =
        binomial_strip_criterion(e(-2) + e(-1), e(1) + e(3));
    CHECK(v.combined() == Verdict::Holds);
    // rp = -1 = (+-i)^2: matched
    const CoronaVerdict w = binomial_strip_criterion(
        e(-2) + e(-1, 1, Complex(0, 1)), e(1) + e(3));
    CHECK(w.combined() == Verdict::Fails);
  }
  SUBCASE("needs exactly two terms per side") {
    CHECK_THROWS_AS(binomial_strip_criterion(e(-1), e(1) + e(2)),
                    NotBinomial);
    CHECK_THROWS_AS(
        binomial_strip_criterion(e(-2) + e(-1), e(1) + e(2) + e(3)),
        NotBinomial);
  }
}

TEST_CASE("bezout completion rules") {
  SUBCASE("a constant component inverts directly") {
    const CoronaPair p = corona_pair(e(1) + e(2), APPoly(Complex(0, 2)),
                                     HalfPlane::Plus, 1e-8);
    CHECK(p.h1.is_zero());
    CHECK(p.h2 == APPoly(Complex(0, -0.5)));
    CHECK(p.residual_bound == 0.0);
    const CoronaPair q =
        corona_pair(APPoly(4), e(1), HalfPlane::Plus, 1e-8);
    CHECK(q.h1 == APPoly(0.25));
    CHECK(q.h2.is_zero());
  }
  SUBCASE("a dominant binomial rooted at zero inverts geometrically") {
    const APPoly omega2 = APPoly(1) + e(1, 1, Complex(0.5, 0));
    const CoronaPair p = corona_pair(e(2), omega2, HalfPlane::Plus, 1e-8);
    CHECK(p.h1.is_zero());
    CHECK(p.residual_bound == doctest::Approx(1e-8));
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double x = -40.0 + 80.0 * i / 999.0;
      const Complex b = eval(e(2), Complex(x, 0)) * eval(p.h1, Complex(x, 0)) +
                        eval(omega2, Complex(x, 0)) * eval(p.h2, Complex(x, 0));
      worst = std::max(worst, std::abs(b - Complex(1, 0)));
    }
    CHECK(worst <= 1e-8);
  }
  SUBCASE("minus half-plane mirrors the rule") {
    const APPoly omega2 = APPoly(1) + e(-1, 1, Complex(0.5, 0));
    const CoronaPair p = corona_pair(e(-2), omega2, HalfPlane::Minus, 1e-6);
    CHECK_FALSE(p.h2.is_zero());
    const auto sb = spectrum_bounds(p.h2);
    REQUIRE(sb.has_value());
    CHECK(sb->second <= Frequency(0));
  }
  SUBCASE("components decaying jointly at infinity have no completion") {
    CHECK_THROWS_AS(corona_pair(e(1), e(2), HalfPlane::Plus, 1e-8),
                    CoronaConditionFails);
    CHECK_THROWS_AS(corona_pair(e(-1), e(-2), HalfPlane::Minus, 1e-8),
                    CoronaConditionFails);
  }
  SUBCASE("pairs outside every rule are unsupported") {
    CHECK_THROWS_AS(corona_pair(APPoly(1) + e(1) + e(2), e(1),
                                HalfPlane::Plus, 1e-8),
                    Unsupported);
    CHECK_THROWS_AS(corona_pair(APPoly(), APPoly(), HalfPlane::Plus, 1e-8),
                    Unsupported);
  }
  SUBCASE("spectra must respect the half-plane") {
    CHECK_THROWS_AS(corona_pair(e(-1), APPoly(1), HalfPlane::Plus, 1e-8),
                    ValidationError);
  }
  SUBCASE("tolerance must be positive") {
    CHECK_THROWS_AS(corona_pair(e(1), APPoly(1), HalfPlane::Plus, 0.0),
                    ValidationError);
  }
}

TEST_CASE("column completion to a determinant-one matrix") {
  SUBCASE("plus side with the worked first column") {
    const Vec2 psi{e(1), -APPoly(1)};
    const CoronaPair h = corona_pair(psi.c1, psi.c2, HalfPlane::Plus, 1e-8);
    const Mat2 H = build_H(psi, h, Frequency(0), HalfPlane::Plus);
    CHECK(H.e11 == e(1));
    CHECK(H.e21 == -APPoly(1));
    CHECK(det(H) == APPoly(1));
    CHECK(spectrum_sign_audit(H, HalfPlane::Plus).all_passed());
  }
  SUBCASE("positive diagonal exponent shifts the stored column") {
    const Vec2 psi{e(2), -e(1)};
    // Bezout data belongs to the shifted column (e_1, -1)
    const CoronaPair h = corona_pair(e(1), -APPoly(1), HalfPlane::Plus, 1e-8);
    const Mat2 H = build_H(psi, h, Frequency(1), HalfPlane::Plus);
    CHECK(H.e11 == e(1));
    CHECK(H.e21 == -APPoly(1));
    CHECK(det(H) == APPoly(1));
  }
  SUBCASE("minus side stores the column unshifted") {
    const Vec2 psi{e(-1), APPoly(1)};
    const CoronaPair h = corona_pair(psi.c1, psi.c2, HalfPlane::Minus, 1e-8);
    const Mat2 H = build_H(psi, h, Frequency(0), HalfPlane::Minus);
    CHECK(H.e11 == e(-1));
    CHECK(det(H) == APPoly(1));
    CHECK(spectrum_sign_audit(H, HalfPlane::Minus).all_passed());
  }
  SUBCASE("corrupted bezout data is caught") {
    const Vec2 psi{e(1), -APPoly(1)};
    CoronaPair bad;
    bad.h2 = APPoly(-0.5);
    CHECK_THROWS_AS(build_H(psi, bad, Frequency(0), HalfPlane::Plus),
                    DeterminantNotOne);
  }
  SUBCASE("entries landing off the half-line are caught") {
    const Vec2 psi{e(-1), -APPoly(1)};
    CoronaPair h;
    h.h2 = APPoly(-1);  // det stays 1, the spectrum does not
    CHECK_THROWS_AS(build_H(psi, h, Frequency(0), HalfPlane::Plus),
                    SpectrumSignViolation);
  }
  SUBCASE("negative diagonal exponent is invalid") {
    const Vec2 psi{e(1), -APPoly(1)};
    CoronaPair h;
    h.h2 = APPoly(-1);
    CHECK_THROWS_AS(build_H(psi, h, Frequency(-1), HalfPlane::Plus),
                    ValidationError);
  }
}
