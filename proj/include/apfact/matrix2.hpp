#pragma once

#include <array>

#include "apfact/appoly.hpp"

namespace apfact {

// Column pair, used both for solutions of the vector problem and for
// matrix columns.
struct Vec2 {
  APPoly c1, c2;
};

// 2x2 matrix over the exponential-sum ring.
struct Mat2 {
  APPoly e11, e12, e21, e22;

  static Mat2 identity() { return Mat2{APPoly(1), APPoly(), APPoly(), APPoly(1)}; }

  Vec2 column(int j) const {
    return j == 0 ? Vec2{e11, e21} : Vec2{e12, e22};
  }
};

inline Mat2 operator*(const Mat2& a, const Mat2& b) {
  return Mat2{a.e11 * b.e11 + a.e12 * b.e21, a.e11 * b.e12 + a.e12 * b.e22,
              a.e21 * b.e11 + a.e22 * b.e21, a.e21 * b.e12 + a.e22 * b.e22};
}

inline Vec2 operator*(const Mat2& a, const Vec2& v) {
  return Vec2{a.e11 * v.c1 + a.e12 * v.c2, a.e21 * v.c1 + a.e22 * v.c2};
}

inline Mat2 operator-(const Mat2& a, const Mat2& b) {
  return Mat2{a.e11 - b.e11, a.e12 - b.e12, a.e21 - b.e21, a.e22 - b.e22};
}

inline APPoly det(const Mat2& a) { return a.e11 * a.e22 - a.e12 * a.e21; }

// Adjugate: for a unit-determinant matrix this is the exact inverse and
// stays inside the exponential-sum ring.
inline Mat2 adjugate(const Mat2& a) {
  return Mat2{a.e22, -a.e12, -a.e21, a.e11};
}

inline double max_coeff_distance(const Mat2& a, const Mat2& b) {
  double m = 0;
  m = std::max(m, max_coeff_distance(a.e11, b.e11));
  m = std::max(m, max_coeff_distance(a.e12, b.e12));
  m = std::max(m, max_coeff_distance(a.e21, b.e21));
  m = std::max(m, max_coeff_distance(a.e22, b.e22));
  return m;
}

using CMat2 = std::array<std::array<Complex, 2>, 2>;

inline CMat2 eval(const Mat2& a, Complex z) {
  return CMat2{{{eval(a.e11, z), eval(a.e12, z)},
                {eval(a.e21, z), eval(a.e22, z)}}};
}

}  // namespace apfact
