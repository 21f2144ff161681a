#pragma once

#include <cstdint>
#include <string>

#include "mvc/errors.hpp"

namespace mvc {

/// Exact rational over 128-bit integers. Always reduced, denominator > 0.
/// Any intermediate that would leave 128-bit range throws RationalOverflow
/// instead of wrapping.
class Rational {
 public:
  using Int = __int128;

  constexpr Rational() = default;
  Rational(long long n) : num_(n) {}  // NOLINT: implicit by design
  Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

  static Rational from_int128(Int n, Int d) {
    Rational r;
    r.num_ = n;
    r.den_ = d;
    r.normalize();
    return r;
  }

  Int num() const { return num_; }
  Int den() const { return den_; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return from_int128(checked_add(checked_mul(a.num_, b.den_), checked_mul(b.num_, a.den_)),
                       checked_mul(a.den_, b.den_));
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return from_int128(checked_sub(checked_mul(a.num_, b.den_), checked_mul(b.num_, a.den_)),
                       checked_mul(a.den_, b.den_));
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from_int128(checked_mul(a.num_, b.num_), checked_mul(a.den_, b.den_));
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational: division by zero");
    return from_int128(checked_mul(a.num_, b.den_), checked_mul(a.den_, b.num_));
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return checked_mul(a.num_, b.den_) < checked_mul(b.num_, a.den_);
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  Rational pow(unsigned e) const {
    Rational r(1), base = *this;
    while (e) {
      if (e & 1u) r *= base;
      base *= base;
      e >>= 1u;
    }
    return r;
  }

  /// "num/den" with the denominator always spelled out, e.g. "5/9", "1/1".
  std::string to_string() const {
    return int128_to_string(num_) + "/" + int128_to_string(den_);
  }

  /// Fixed six decimal places, rounded to nearest (ties away from zero).
  std::string to_decimal6() const {
    const Int scale = 1000000;
    bool neg = num_ < 0;
    Int n = neg ? -num_ : num_;
    Int scaled = checked_mul(n, scale);
    Int q = scaled / den_;
    Int rem = scaled % den_;
    if (2 * rem >= den_) ++q;
    std::string frac = int128_to_string(q % scale);
    frac.insert(frac.begin(), 6 - frac.size(), '0');
    return (neg ? "-" : "") + int128_to_string(q / scale) + "." + frac;
  }

  static std::string int128_to_string(Int x) {
    if (x == 0) return "0";
    bool neg = x < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(x) : x;
    std::string s;
    while (u) {
      s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
      u /= 10;
    }
    if (neg) s.push_back('-');
    return {s.rbegin(), s.rend()};
  }

 private:
  Int num_ = 0;
  Int den_ = 1;

  static Int checked_add(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r)) throw RationalOverflow("rational: add overflow");
    return r;
  }
  static Int checked_sub(Int a, Int b) {
    Int r;
    if (__builtin_sub_overflow(a, b, &r)) throw RationalOverflow("rational: sub overflow");
    return r;
  }
  static Int checked_mul(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r)) throw RationalOverflow("rational: mul overflow");
    return r;
  }
  static Int gcd(Int a, Int b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
      Int t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  void normalize() {
    if (den_ == 0) throw std::domain_error("rational: zero denominator");
    if (den_ < 0) {
      num_ = checked_sub(0, num_);
      den_ = checked_sub(0, den_);
    }
    if (num_ == 0) {
      den_ = 1;
      return;
    }
    Int g = gcd(num_, den_);
    num_ /= g;
    den_ /= g;
  }
};

}  // namespace mvc
