// Copyright 2026 The Stage Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <compare>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace stage {

// Exact signed rational with int64 numerator/denominator. Always stored
// normalized (gcd 1, denominator > 0). Arithmetic whose normalized result
// does not fit int64 throws std::overflow_error; nothing ever wraps.
class Rational {
 public:
  constexpr Rational() : num_(0), den_(1) {}
  constexpr Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t n, std::int64_t d) {
    if (d == 0) throw std::invalid_argument("Rational: zero denominator");
    normalize_from(static_cast<__int128>(n), static_cast<__int128>(d));
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }
  bool is_integer() const { return den_ == 1; }

  Rational operator-() const {
    if (num_ == std::numeric_limits<std::int64_t>::min())
      throw std::overflow_error("Rational: negation overflow");
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    // lcm-based addition keeps intermediates small for common denominators.
    std::int64_t g = std::gcd(a.den_, b.den_);
    __int128 lhs = static_cast<__int128>(a.num_) * (b.den_ / g);
    __int128 rhs = static_cast<__int128>(b.num_) * (a.den_ / g);
    __int128 den = static_cast<__int128>(a.den_) * (b.den_ / g);
    return from_i128(lhs + rhs, den);
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    std::int64_t g1 = std::gcd(std::llabs(a.num_), b.den_);
    std::int64_t g2 = std::gcd(std::llabs(b.num_), a.den_);
    __int128 num = static_cast<__int128>(a.num_ / g1) * (b.num_ / g2);
    __int128 den = static_cast<__int128>(a.den_ / g2) * (b.den_ / g1);
    return from_i128(num, den);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::invalid_argument("Rational: division by zero");
    __int128 num = static_cast<__int128>(a.num_) * b.den_;
    __int128 den = static_cast<__int128>(a.den_) * b.num_;
    return from_i128(num, den);
  }

  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }
  Rational& operator/=(const Rational& b) { return *this = *this / b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
    __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  Rational abs() const { return num_ < 0 ? -*this : *this; }

  // Rounds toward negative infinity.
  std::int64_t floor() const {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
  }

  // Exact conversion from a plain decimal literal, optionally with a
  // scientific exponent: "0.45" -> 9/20, "1e-05" -> 1/100000.
  static Rational from_decimal(std::string_view text);

  // "n" for integers, "n/d" otherwise.
  std::string str() const {
    std::string s = std::to_string(num_);
    if (den_ != 1) {
      s += '/';
      s += std::to_string(den_);
    }
    return s;
  }

 private:
  static __int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static Rational from_i128(__int128 n, __int128 d) {
    Rational r;
    r.normalize_from(n, d);
    return r;
  }

  void normalize_from(__int128 n, __int128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 g = n == 0 ? d : gcd128(n, d);
    n /= g;
    d /= g;
    constexpr __int128 kMax = std::numeric_limits<std::int64_t>::max();
    constexpr __int128 kMin = std::numeric_limits<std::int64_t>::min();
    if (n > kMax || n < kMin || d > kMax)
      throw std::overflow_error("Rational: value does not fit 64-bit num/den");
    num_ = static_cast<std::int64_t>(n);
    den_ = static_cast<std::int64_t>(d);
  }

  std::int64_t num_;
  std::int64_t den_;
};

inline Rational Rational::from_decimal(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("Rational: empty decimal literal");
  bool negative = false;
  std::size_t i = 0;
  if (text[0] == '+' || text[0] == '-') {
    negative = text[0] == '-';
    i = 1;
  }
  __int128 digits = 0;
  int frac_digits = 0;
  bool seen_dot = false;
  bool seen_digit = false;
  constexpr __int128 kGuard = static_cast<__int128>(1) << 100;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c == '.') {
      if (seen_dot) throw std::invalid_argument("Rational: malformed decimal");
      seen_dot = true;
    } else if (c >= '0' && c <= '9') {
      digits = digits * 10 + (c - '0');
      if (digits > kGuard) throw std::overflow_error("Rational: decimal literal too long");
      if (seen_dot) ++frac_digits;
      seen_digit = true;
    } else if (c == 'e' || c == 'E') {
      break;
    } else {
      throw std::invalid_argument("Rational: malformed decimal");
    }
  }
  int exponent = 0;
  if (i < text.size()) {  // at 'e'
    ++i;
    bool exp_neg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      exp_neg = text[i] == '-';
      ++i;
    }
    if (i == text.size()) throw std::invalid_argument("Rational: malformed exponent");
    for (; i < text.size(); ++i) {
      char c = text[i];
      if (c < '0' || c > '9') throw std::invalid_argument("Rational: malformed exponent");
      exponent = exponent * 10 + (c - '0');
      if (exponent > 1000) throw std::overflow_error("Rational: exponent out of range");
    }
    if (exp_neg) exponent = -exponent;
  }
  if (!seen_digit) throw std::invalid_argument("Rational: malformed decimal");

  int scale = exponent - frac_digits;
  __int128 num = negative ? -digits : digits;
  __int128 den = 1;
  while (scale > 0) {
    num *= 10;
    if (num > (static_cast<__int128>(1) << 126) || num < -(static_cast<__int128>(1) << 126))
      throw std::overflow_error("Rational: decimal literal out of range");
    --scale;
  }
  while (scale < 0) {
    den *= 10;
    if (den > (static_cast<__int128>(1) << 126))
      throw std::overflow_error("Rational: decimal literal out of range");
    ++scale;
  }
  Rational r;
  r.normalize_from(num, den);
  return r;
}

}  // namespace stage
