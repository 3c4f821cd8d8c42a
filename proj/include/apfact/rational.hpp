#pragma once

#include <cstdint>
#include <compare>
#include <numeric>
#include <string>

#include "apfact/errors.hpp"

namespace apfact {

// Exact rational number used for every exponent in the library.
// Stored reduced with positive denominator. All arithmetic is exact;
// intermediate products are taken in 128-bit and any result that cannot
// be reduced back into 64-bit is reported as OverflowError rather than
// silently wrapped.
class Frequency {
 public:
  constexpr Frequency() = default;
  Frequency(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  Frequency(std::int64_t n, std::int64_t d) { assign(n, d); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  // Parses "n" or "n/d". Unreduced input such as "2/4" is normalized.
  static Frequency parse(const std::string& text);

  // Always renders as "n/d", including unit denominators, so that the
  // serialized form round-trips bit-exactly.
  std::string str() const {
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend Frequency operator+(const Frequency& a, const Frequency& b) {
    __int128 n = i128(a.num_) * b.den_ + i128(b.num_) * a.den_;
    __int128 d = i128(a.den_) * b.den_;
    return make(n, d);
  }
  friend Frequency operator-(const Frequency& a, const Frequency& b) {
    __int128 n = i128(a.num_) * b.den_ - i128(b.num_) * a.den_;
    __int128 d = i128(a.den_) * b.den_;
    return make(n, d);
  }
  friend Frequency operator*(const Frequency& a, const Frequency& b) {
    return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Frequency operator/(const Frequency& a, const Frequency& b) {
    if (b.num_ == 0) throw ValidationError("division of exponents by zero");
    return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }
  Frequency operator-() const {
    Frequency r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  Frequency& operator+=(const Frequency& b) { return *this = *this + b; }
  Frequency& operator-=(const Frequency& b) { return *this = *this - b; }
  Frequency& operator*=(const Frequency& b) { return *this = *this * b; }

  friend bool operator==(const Frequency& a, const Frequency& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Frequency& a,
                                          const Frequency& b) {
    __int128 lhs = i128(a.num_) * b.den_;
    __int128 rhs = i128(b.num_) * a.den_;
    return lhs < rhs ? std::strong_ordering::less
         : lhs > rhs ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
  }

 private:
  static __int128 i128(std::int64_t v) { return static_cast<__int128>(v); }
  static Frequency make(__int128 n, __int128 d);
  void assign(std::int64_t n, std::int64_t d);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline Frequency min(const Frequency& a, const Frequency& b) {
  return a < b ? a : b;
}
inline Frequency max(const Frequency& a, const Frequency& b) {
  return a < b ? b : a;
}

// Smallest integer k with k >= a/b; requires b > 0.
std::int64_t ceil_ratio(const Frequency& a, const Frequency& b);

}  // namespace apfact
