#include <cstdint>
#include <random>

#include "doctest.h"

#include "apfact/errors.hpp"
#include "apfact/rational.hpp"

using namespace apfact;

TEST_CASE("construction reduces and normalizes the sign") {
  CHECK(Frequency(2, 4) == Frequency(1, 2));
  CHECK(Frequency(-2, 4) == Frequency(-1, 2));
  CHECK(Frequency(2, -4) == Frequency(-1, 2));
  CHECK(Frequency(-2, -4) == Frequency(1, 2));
  CHECK(Frequency(0, 7) == Frequency(0));
  CHECK(Frequency(0, 7).den() == 1);
  CHECK_THROWS_AS(Frequency(1, 0), ValidationError);
}

TEST_CASE("parse accepts n and n/d and normalizes") {
  CHECK(Frequency::parse("3") == Frequency(3));
  CHECK(Frequency::parse("-3") == Frequency(-3));
  CHECK(Frequency::parse("2/4") == Frequency(1, 2));
  CHECK(Frequency::parse("2/4").str() == "1/2");
  CHECK(Frequency::parse("-5/10").str() == "-1/2");
  CHECK_THROWS_AS(Frequency::parse(""), ParseError);
  CHECK_THROWS_AS(Frequency::parse("abc"), ParseError);
  CHECK_THROWS_AS(Frequency::parse("1/"), ParseError);
  CHECK_THROWS_AS(Frequency::parse("/2"), ParseError);
  CHECK_THROWS_AS(Frequency::parse("1/0"), ValidationError);
}

TEST_CASE("str always renders an explicit denominator and round-trips") {
  CHECK(Frequency(5).str() == "5/1");
  CHECK(Frequency(-7, 3).str() == "-7/3");
  std::mt19937 rng(99);
  for (int i = 0; i < 200; ++i) {
    const Frequency f(static_cast<int>(rng() % 2001) - 1000,
                      1 + static_cast<int>(rng() % 40));
    CHECK(Frequency::parse(f.str()) == f);
  }
}

TEST_CASE("arithmetic agrees with a cross-multiplication oracle") {
  std::mt19937 rng(7);
  const auto rnd = [&rng] {
    return Frequency(static_cast<int>(rng() % 41) - 20,
                     1 + static_cast<int>(rng() % 12));
  };
  for (int i = 0; i < 500; ++i) {
    const Frequency a = rnd(), b = rnd();
    const std::int64_t an = a.num(), ad = a.den(), bn = b.num(), bd = b.den();
    const Frequency sum = a + b;
    CHECK(sum.num() * ad * bd == (an * bd + bn * ad) * sum.den());
    const Frequency diff = a - b;
    CHECK(diff.num() * ad * bd == (an * bd - bn * ad) * diff.den());
    const Frequency prod = a * b;
    CHECK(prod.num() * ad * bd == an * bn * prod.den());
    if (!b.is_zero()) {
      CHECK(a / b * b == a);
    }
    CHECK((a < b) == (an * bd < bn * ad));
  }
  CHECK_THROWS_AS(Frequency(1) / Frequency(0), ValidationError);
}

TEST_CASE("comparison is a total order consistent with doubles") {
  CHECK(Frequency(1, 3) < Frequency(1, 2));
  CHECK(Frequency(-1, 2) < Frequency(-1, 3));
  CHECK(Frequency(2, 6) == Frequency(1, 3));
  CHECK(max(Frequency(1, 3), Frequency(1, 2)) == Frequency(1, 2));
  CHECK(min(Frequency(1, 3), Frequency(1, 2)) == Frequency(1, 3));
}

TEST_CASE("sign, is_zero, is_integer, to_double") {
  CHECK(Frequency(-3, 7).sign() == -1);
  CHECK(Frequency(0).sign() == 0);
  CHECK(Frequency(5, 5).is_integer());
  CHECK_FALSE(Frequency(5, 4).is_integer());
  CHECK(Frequency(0).is_zero());
  CHECK(Frequency(1, 2).to_double() == doctest::Approx(0.5));
}

TEST_CASE("overflow is detected rather than wrapped") {
  const std::int64_t big = (std::int64_t(1) << 62);
  const Frequency huge(big, 1);
  CHECK_THROWS_AS(huge * Frequency(4), OverflowError);
  CHECK_THROWS_AS(huge + huge, OverflowError);
  CHECK_NOTHROW(huge - huge);
}

TEST_CASE("ceil_ratio rounds toward positive infinity") {
  CHECK(ceil_ratio(Frequency(7, 2), Frequency(1)) == 4);
  CHECK(ceil_ratio(Frequency(-7, 2), Frequency(1)) == -3);
  CHECK(ceil_ratio(Frequency(6, 3), Frequency(1)) == 2);
  CHECK(ceil_ratio(Frequency(5), Frequency(5, 2)) == 2);
  CHECK(ceil_ratio(Frequency(0), Frequency(3)) == 0);
  CHECK(ceil_ratio(Frequency(1, 100), Frequency(3)) == 1);
  CHECK_THROWS_AS(ceil_ratio(Frequency(1), Frequency(-1)), ValidationError);
  CHECK_THROWS_AS(ceil_ratio(Frequency(1), Frequency(0)), ValidationError);
}
