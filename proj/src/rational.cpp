#include "apfact/rational.hpp"

#include <cstdlib>
#include <limits>

namespace apfact {

namespace {

__int128 abs128(__int128 v) { return v < 0 ? -v : v; }

__int128 gcd128(__int128 a, __int128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t narrow(__int128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min()) {
    throw OverflowError("exponent arithmetic exceeds 64-bit range");
  }
  return static_cast<std::int64_t>(v);
}

}  // namespace

Frequency Frequency::make(__int128 n, __int128 d) {
  if (d == 0) throw ValidationError("exponent with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  __int128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  Frequency r;
  r.num_ = narrow(n);
  r.den_ = narrow(d);
  return r;
}

void Frequency::assign(std::int64_t n, std::int64_t d) {
  *this = make(i128(n), i128(d));
}

Frequency Frequency::parse(const std::string& text) {
  if (text.empty()) throw ParseError("empty exponent literal");
  const auto slash = text.find('/');
  const std::string num_part = text.substr(0, slash);
  const std::string den_part =
      slash == std::string::npos ? "1" : text.substr(slash + 1);
  auto parse_int = [&](const std::string& s) -> std::int64_t {
    if (s.empty()) throw ParseError("bad exponent literal: '" + text + "'");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw ParseError("bad exponent literal: '" + text + "'");
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') {
        throw ParseError("bad exponent literal: '" + text + "'");
      }
    }
    errno = 0;
    char* end = nullptr;
    const long long v = std::strtoll(s.c_str(), &end, 10);
    if (errno != 0 || end != s.c_str() + s.size()) {
      throw ParseError("exponent literal out of range: '" + text + "'");
    }
    return v;
  };
  return Frequency(parse_int(num_part), parse_int(den_part));
}

std::int64_t ceil_ratio(const Frequency& a, const Frequency& b) {
  if (!(b > Frequency(0))) {
    throw ValidationError("ceil_ratio requires a positive divisor");
  }
  // a/b = (a.num * b.den) / (a.den * b.num) with positive denominator.
  __int128 p = static_cast<__int128>(a.num()) * b.den();
  __int128 q = static_cast<__int128>(a.den()) * b.num();
  __int128 quo = p / q;
  if (p % q != 0 && p > 0) quo += 1;
  if (quo > std::numeric_limits<std::int64_t>::max()) {
    throw OverflowError("ceil_ratio exceeds 64-bit range");
  }
  return static_cast<std::int64_t>(quo);
}

}  // namespace apfact
