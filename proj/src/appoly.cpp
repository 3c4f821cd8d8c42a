#include "apfact/appoly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace apfact {

APPoly APPoly::exponential(const Frequency& f, Complex c) {
  APPoly p;
  if (std::abs(c) > coeff_zero_tol) p.terms_.push_back({f, c});
  return p;
}

APPoly APPoly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.freq < b.freq; });
  APPoly p;
  for (const Term& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().freq == t.freq) {
      p.terms_.back().coeff += t.coeff;
    } else {
      p.terms_.push_back(t);
    }
  }
  std::erase_if(p.terms_, [](const Term& t) {
    return std::abs(t.coeff) <= coeff_zero_tol;
  });
  return p;
}

APPoly operator+(const APPoly& a, const APPoly& b) {
  std::vector<Term> out;
  out.reserve(a.terms().size() + b.terms().size());
  out.insert(out.end(), a.terms().begin(), a.terms().end());
  out.insert(out.end(), b.terms().begin(), b.terms().end());
  return APPoly::from_terms(std::move(out));
}

APPoly operator-(const APPoly& a) {
  std::vector<Term> out = a.terms();
  for (Term& t : out) t.coeff = -t.coeff;
  return APPoly::from_terms(std::move(out));
}

APPoly operator-(const APPoly& a, const APPoly& b) { return a + (-b); }

APPoly operator*(const APPoly& a, const APPoly& b) {
  std::vector<Term> out;
  out.reserve(a.terms().size() * b.terms().size());
  for (const Term& ta : a.terms()) {
    for (const Term& tb : b.terms()) {
      out.push_back({ta.freq + tb.freq, ta.coeff * tb.coeff});
    }
  }
  return APPoly::from_terms(std::move(out));
}

APPoly operator*(Complex s, const APPoly& a) {
  std::vector<Term> out = a.terms();
  for (Term& t : out) t.coeff *= s;
  return APPoly::from_terms(std::move(out));
}

APPoly pow(const APPoly& a, int n) {
  if (n < 0) throw ValidationError("pow requires a nonnegative exponent");
  APPoly acc(1);
  for (int i = 0; i < n; ++i) acc = acc * a;
  return acc;
}

Complex mean_value(const APPoly& p) {
  for (const Term& t : p.terms()) {
    if (t.freq.is_zero()) return t.coeff;
    if (t.freq > Frequency(0)) break;
  }
  return Complex(0, 0);
}

Complex bohr_coefficient(const APPoly& p, const Frequency& f) {
  for (const Term& t : p.terms()) {
    if (t.freq == f) return t.coeff;
    if (t.freq > f) break;
  }
  return Complex(0, 0);
}

std::optional<std::pair<Frequency, Frequency>> spectrum_bounds(
    const APPoly& p) {
  if (p.is_zero()) return std::nullopt;
  return std::make_pair(p.terms().front().freq, p.terms().back().freq);
}

Complex eval(const APPoly& p, Complex z) {
  Complex acc(0, 0);
  const Complex iz = Complex(0, 1) * z;
  for (const Term& t : p.terms()) {
    acc += t.coeff * std::exp(t.freq.to_double() * iz);
  }
  return acc;
}

APPoly shift(const APPoly& p, const Frequency& gamma) {
  std::vector<Term> out = p.terms();
  for (Term& t : out) t.freq += gamma;
  return APPoly::from_terms(std::move(out));
}

SplitResult split_at(const APPoly& p, const Frequency& tau,
                     bool boundary_in_upper) {
  SplitResult r;
  std::vector<Term> lower, upper;
  for (const Term& t : p.terms()) {
    const bool goes_up =
        t.freq > tau || (t.freq == tau && boundary_in_upper);
    (goes_up ? upper : lower).push_back(t);
  }
  r.lower = APPoly::from_terms(std::move(lower));
  r.upper = APPoly::from_terms(std::move(upper));
  return r;
}

APPoly neumann_inverse(const APPoly& p, double tol, int max_terms) {
  if (tol <= 0) throw ValidationError("neumann_inverse requires tol > 0");
  if (max_terms <= 0) {
    throw ValidationError("neumann_inverse requires max_terms > 0");
  }
  if (p.term_count() != 2) {
    throw NotDominantBinomial("expected exactly two terms, got " +
                              std::to_string(p.term_count()));
  }
  Term lead = p.terms()[0];
  Term rest = p.terms()[1];
  if (std::abs(lead.coeff) < std::abs(rest.coeff)) std::swap(lead, rest);
  const double r = std::abs(rest.coeff) / std::abs(lead.coeff);
  if (!(r < 1.0)) {
    throw NotDominantBinomial("no strictly dominant coefficient (ratio " +
                              std::to_string(r) + ")");
  }
  // Smallest N with r^{N+1} / (1-r) <= tol.
  int order = 0;
  double tail = r / (1.0 - r);  // bound after keeping the n=0 term
  while (tail > tol) {
    ++order;
    tail *= r;
    if (order + 1 > max_terms) {
      throw TruncationBudgetExceeded(
          "needs more than " + std::to_string(max_terms) +
          " terms to reach tolerance " + std::to_string(tol));
    }
  }
  const Complex ratio = -rest.coeff / lead.coeff;
  const Frequency step = rest.freq - lead.freq;
  std::vector<Term> out;
  out.reserve(static_cast<std::size_t>(order) + 1);
  Complex c = Complex(1, 0) / lead.coeff;
  Frequency f = -lead.freq;
  for (int n = 0; n <= order; ++n) {
    out.push_back({f, c});
    c *= ratio;
    f += step;
  }
  return APPoly::from_terms(std::move(out));
}

double max_coeff_distance(const APPoly& a, const APPoly& b) {
  return max_coeff(a - b);
}

double max_coeff(const APPoly& p) {
  double m = 0;
  for (const Term& t : p.terms()) m = std::max(m, std::abs(t.coeff));
  return m;
}

namespace {

void format_real(std::ostringstream& os, double v) {
  if (v == static_cast<long long>(v) && std::abs(v) < 1e15) {
    os << static_cast<long long>(v);
  } else {
    os << v;
  }
}

void format_coeff(std::ostringstream& os, Complex c, bool leading) {
  const bool pure_real = c.imag() == 0;
  const bool pure_imag = c.real() == 0 && c.imag() != 0;
  if (pure_real) {
    double v = c.real();
    if (!leading) {
      os << (v < 0 ? " - " : " + ");
      v = std::abs(v);
    } else if (v < 0) {
      os << "-";
      v = -v;
    }
    format_real(os, v);
  } else if (pure_imag) {
    double v = c.imag();
    if (!leading) {
      os << (v < 0 ? " - " : " + ");
      v = std::abs(v);
    } else if (v < 0) {
      os << "-";
      v = -v;
    }
    format_real(os, v);
    os << "i";
  } else {
    if (!leading) os << " + ";
    os << "(";
    format_real(os, c.real());
    os << (c.imag() < 0 ? "-" : "+");
    format_real(os, std::abs(c.imag()));
    os << "i)";
  }
}

}  // namespace

std::string to_string(const APPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool leading = true;
  for (const Term& t : p.terms()) {
    if (t.freq.is_zero()) {
      format_coeff(os, t.coeff, leading);
    } else if (t.coeff == Complex(1, 0)) {
      os << (leading ? "" : " + ") << "e[" << t.freq.str() << "]";
    } else if (t.coeff == Complex(-1, 0)) {
      os << (leading ? "-" : " - ") << "e[" << t.freq.str() << "]";
    } else {
      format_coeff(os, t.coeff, leading);
      os << " e[" << t.freq.str() << "]";
    }
    leading = false;
  }
  return os.str();
}

}  // namespace apfact
