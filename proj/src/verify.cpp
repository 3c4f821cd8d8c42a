#include "apfact/verify.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "apfact/errors.hpp"
#include "apfact/factorize.hpp"

namespace apfact {

namespace {

struct CEval {
  Complex e11, e12, e21, e22;
};

CEval eval_at(const Mat2& m, Complex z) {
  return {eval(m.e11, z), eval(m.e12, z), eval(m.e21, z), eval(m.e22, z)};
}

}  // namespace

VerificationReport grid_residual(const TriangularSymbol& sym,
                                 const Factorization& fac, int points,
                                 unsigned seed) {
  if (points < 0) throw ValidationError("sample count must be nonnegative");
  VerificationReport rep;
  if (points == 0) {
    rep.add("pointwise-residual", true, "vacuous pass: no sample points");
    return rep;
  }

  const Mat2 G = symbol_matrix(sym);
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> coord(-50.0, 50.0);
  const double d1 = fac.D_exponents.first.to_double();
  const double d2 = fac.D_exponents.second.to_double();

  for (int k = 0; k < points; ++k) {
    const double x = coord(rng);
    const Complex z{x, 0.0};
    const CEval gp = eval_at(fac.G_plus, z);
    const Complex detp = gp.e11 * gp.e22 - gp.e12 * gp.e21;
    if (std::abs(detp) < 1e-13) {
      throw SingularFactor("det G_+ vanishes at x = " + std::to_string(x));
    }
    const Complex i11 = gp.e22 / detp, i12 = -gp.e12 / detp;
    const Complex i21 = -gp.e21 / detp, i22 = gp.e11 / detp;
    const CEval gm = eval_at(fac.G_minus, z);
    const Complex f1 = std::exp(Complex(0.0, d1 * x));
    const Complex f2 = std::exp(Complex(0.0, d2 * x));
    // Columns of G_- pick up the matching diagonal exponential of D.
    const Complex a11 = gm.e11 * f1, a12 = gm.e12 * f2;
    const Complex a21 = gm.e21 * f1, a22 = gm.e22 * f2;
    const CEval g = eval_at(G, z);
    const double r =
        std::max({std::abs(g.e11 - (a11 * i11 + a12 * i21)),
                  std::abs(g.e12 - (a11 * i12 + a12 * i22)),
                  std::abs(g.e21 - (a21 * i11 + a22 * i21)),
                  std::abs(g.e22 - (a21 * i12 + a22 * i22))});
    if (r > rep.max_residual) {
      rep.max_residual = r;
      rep.worst_point = z;
    }
    ++rep.sample_count;
  }
  rep.add("pointwise-residual", std::isfinite(rep.max_residual),
          "max " + std::to_string(rep.max_residual) + " at x = " +
              std::to_string(rep.worst_point.real()));
  return rep;
}

double strip_infimum_estimate(const APPoly& f1, const APPoly& f2, double eps1,
                              double eps2, int nx, int ny) {
  if (eps1 < 0 || eps2 < 0) {
    throw ValidationError("strip half-widths must be nonnegative");
  }
  if (nx < 1 || ny < 1) throw ValidationError("grid must be positive");

  std::vector<double> ys;
  if (ny == 1) {
    ys.push_back(0.0);
  } else {
    for (int j = 0; j < ny; ++j) {
      ys.push_back(-eps2 + (eps1 + eps2) * j / (ny - 1));
    }
    bool has_axis = false;
    for (double y : ys) has_axis = has_axis || std::abs(y) < 1e-15;
    if (!has_axis) ys.push_back(0.0);  // the real axis is always sampled
  }

  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < nx; ++i) {
    const double x = nx == 1 ? 0.0 : -200.0 + 400.0 * i / (nx - 1);
    for (double y : ys) {
      const Complex z{x, y};
      best = std::min(best, std::abs(eval(f1, z)) + std::abs(eval(f2, z)));
    }
  }
  return best;
}

VerificationReport spectrum_sign_audit(const Mat2& m, HalfPlane side) {
  VerificationReport rep;
  const APPoly* entries[2][2] = {{&m.e11, &m.e12}, {&m.e21, &m.e22}};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const std::string name =
          "entry(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
      const auto sb = spectrum_bounds(*entries[i][j]);
      if (!sb) {
        rep.add(name, true, "empty spectrum");
        continue;
      }
      if (side == HalfPlane::Plus) {
        const bool ok = sb->first.sign() >= 0;
        rep.add(name, ok,
                ok ? "" : "minimum frequency " + sb->first.str() + " below 0");
      } else {
        const bool ok = sb->second.sign() <= 0;
        rep.add(name, ok,
                ok ? "" : "maximum frequency " + sb->second.str() + " above 0");
      }
    }
  }
  return rep;
}

}  // namespace apfact
