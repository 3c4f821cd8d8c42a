#include <random>
#include <variant>

#include "doctest.h"

#include "apfact/errors.hpp"
#include "apfact/rhsolve.hpp"

using namespace apfact;

namespace {

APPoly e(long n, long d = 1, Complex c = Complex(1, 0)) {
  return APPoly::exponential(Frequency(n, d), c);
}

ClassMembership membership_of(const TriangularSymbol& sym) {
  ClassifyResult r = classify(sym);
  auto* m = std::get_if<ClassMembership>(&r);
  REQUIRE(m);
  return *m;
}

Complex dyadic(std::mt19937& rng) {
  const auto pick = [&rng] {
    return (static_cast<int>(rng() % 33) - 16) / 8.0;
  };
  Complex c{pick(), (rng() % 2) != 0 ? pick() : 0.0};
  if (std::abs(c) == 0.0) c = Complex(1, 0);
  return c;
}

APPoly random_side(std::mt19937& rng, const Frequency& width, bool minus) {
  std::vector<Term> terms;
  const int count = 1 + static_cast<int>(rng() % 6);
  bool used[9] = {};
  for (int i = 0; i < count; ++i) {
    const int slot = static_cast<int>(rng() % 9);
    if (used[slot]) continue;
    used[slot] = true;
    Frequency f = Frequency(slot, 8) * width;
    if (minus) f = -f;
    terms.push_back({f, dyadic(rng)});
  }
  if (terms.empty()) terms.push_back({Frequency(0), Complex(1, 0)});
  return APPoly::from_terms(std::move(terms));
}

}  // namespace

TEST_CASE("structured solution of the two-block worked example") {
  const TriangularSymbol sym{Frequency(4), e(-1) + e(1), std::nullopt};
  const ClassMembership m = membership_of(sym);
  REQUIRE(m.N == 2);
  const RHSolution sol = solve_structured(m, sym.lambda);

  CHECK(sol.phi1_plus == e(3) - e(1));
  CHECK(sol.phi2_plus == -APPoly(1));
  CHECK(sol.phi1_minus == e(-1) - e(-3));
  CHECK(sol.phi2_minus == -APPoly(1));
  CHECK(sol.provenance == Provenance::StructuredN);
  CHECK(to_string(sol.provenance) == std::string("structured"));

  // both coupling rows, exactly
  CHECK(shift(sol.phi1_plus, -sym.lambda) == sol.phi1_minus);
  CHECK(sym.g * sol.phi1_plus + shift(sol.phi2_plus, sym.lambda) ==
        sol.phi2_minus);
  CHECK(verify_solution(sym, sol).all_passed());

  const ReducedSolution red =
      exponential_reduction(sol, decompose(sym), sym.lambda);
  CHECK(red.mu == Frequency(0));
}

TEST_CASE("single-block structured solution equals the wide-gap one") {
  const TriangularSymbol sym{Frequency(2), e(-1) + e(1), std::nullopt};
  const ClassMembership m = membership_of(sym);
  REQUIRE(m.N == 1);
  const RHSolution a = solve_structured(m, sym.lambda);
  const RHSolution b = solve_biggap(decompose(sym), sym.lambda, Frequency(1));
  CHECK(a.phi1_plus == b.phi1_plus);
  CHECK(a.phi2_plus == b.phi2_plus);
  CHECK(a.phi1_minus == b.phi1_minus);
  CHECK(a.phi2_minus == b.phi2_minus);
  CHECK(b.provenance == Provenance::BigGap);
  CHECK(to_string(b.provenance) == std::string("big-gap"));
  CHECK(b.used_nu == Frequency(1));
  CHECK(b.phi1_plus == e(1));
  CHECK(b.phi2_plus == -APPoly(1));
}

TEST_CASE("wide-gap solver validates the offset and the regime") {
  const GapData gap = decompose({Frequency(2), e(-1) + e(1), std::nullopt});
  CHECK_THROWS_AS(solve_biggap(gap, Frequency(2), Frequency(3)),
                  NuOutOfRange);
  CHECK_THROWS_AS(solve_biggap(gap, Frequency(2), Frequency(1, 2)),
                  NuOutOfRange);
  const GapData narrow =
      decompose({Frequency(2), e(-1, 2) + e(1, 2), std::nullopt});
  CHECK_THROWS_AS(solve_biggap(narrow, Frequency(2), Frequency(1, 2)),
                  NotBigGap);
}

TEST_CASE("wide-gap solution for a zero off-diagonal entry") {
  const TriangularSymbol sym{Frequency(2), APPoly(), std::nullopt};
  const RHSolution sol = solve_biggap(decompose(sym), sym.lambda, Frequency(1));
  CHECK(verify_solution(sym, sol).all_passed());
  CHECK(sol.phi2_plus.is_zero());
}

TEST_CASE("one-sided forms") {
  SUBCASE("zero-frequency plus an upper part") {
    const TriangularSymbol sym{Frequency(2), APPoly(1) + e(2), std::nullopt};
    const auto sol = solve_one_sided(sym);
    REQUIRE(sol.has_value());
    CHECK(sol->provenance == Provenance::OneSided);
    CHECK(to_string(sol->provenance) == std::string("one-sided"));
    CHECK(verify_solution(sym, *sol).all_passed());
    CHECK_FALSE(sol->is_zero());
  }
  SUBCASE("zero-frequency plus a lower part") {
    const TriangularSymbol sym{Frequency(2), e(-2) + APPoly(Complex(0, 3)),
                               std::nullopt};
    const auto sol = solve_one_sided(sym);
    REQUIRE(sol.has_value());
    CHECK(verify_solution(sym, *sol).all_passed());
  }
  SUBCASE("terms on both sides defeat the one-sided forms") {
    const TriangularSymbol sym{Frequency(2), e(-1) + APPoly(1) + e(1),
                               std::nullopt};
    CHECK_FALSE(solve_one_sided(sym).has_value());
  }
}

TEST_CASE("exponential reduction of the noncanonical worked example") {
  const TriangularSymbol sym{Frequency(3), e(-2) + e(2), std::nullopt};
  const GapData gap = decompose(sym);
  const RHSolution sol = solve_biggap(gap, sym.lambda, Frequency(2));
  const ReducedSolution red = exponential_reduction(sol, gap, sym.lambda);
  CHECK(red.mu == Frequency(1));
  CHECK(red.psi_plus.c1 == e(1));
  CHECK(red.psi_plus.c2 == -APPoly(1));
  CHECK(red.psi_minus.c1 == e(-1));
  CHECK(red.psi_minus.c2 == APPoly(1));
}

TEST_CASE("reducing the zero solution is an error") {
  const TriangularSymbol sym{Frequency(2), e(-1) + e(1), std::nullopt};
  RHSolution zero;
  CHECK(zero.is_zero());
  CHECK_THROWS_AS(exponential_reduction(zero, decompose(sym), sym.lambda),
                  ZeroSolution);
}

TEST_CASE("solution verification flags corrupted data") {
  const TriangularSymbol sym{Frequency(4), e(-1) + e(1), std::nullopt};
  RHSolution sol = solve_structured(membership_of(sym), sym.lambda);
  sol.phi2_minus = sol.phi2_minus + APPoly(1e-3);
  CHECK_FALSE(verify_solution(sym, sol).all_passed());
}

TEST_CASE("randomized memberships solve exactly") {
  std::mt19937 rng(161803u);
  for (int trial = 0; trial < 150; ++trial) {
    ClassMembership m;
    m.N = 1 + static_cast<int>(rng() % 5);
    const Frequency nu{1 + static_cast<long>(rng() % 8), 4};
    const Frequency beta{1 + static_cast<long>(rng() % 8), 4};
    m.lambda = Frequency(m.N) * (nu + beta);
    m.chosen_nu = m.nu_min = m.nu_max = nu;
    m.beta = beta;
    const Frequency n1{m.N - 1};
    m.a_plus = random_side(rng, m.N > 1 ? nu / n1 : Frequency(2), false);
    m.a_minus = random_side(rng, m.N > 1 ? beta / n1 : Frequency(2), true);
    if (m.N > 1) {
      m.b_plus = shift(m.a_minus, beta / n1);
      m.b_minus = shift(m.a_plus, -(nu / n1));
    }
    const TriangularSymbol sym{m.lambda, m.g_minus() + m.g_plus(),
                               std::nullopt};
    const RHSolution sol = solve_structured(m, m.lambda);
    CHECK(verify_solution(sym, sol).all_passed());
  }
}
