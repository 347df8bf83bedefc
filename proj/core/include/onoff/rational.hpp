#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace onoff {

// Exact rational number, always in lowest terms with a positive denominator.
// Backed by GMP; division by zero raises Error(kDivisionByZero).
class Rational {
 public:
  Rational() = default;
  Rational(long numerator);  // NOLINT(google-explicit-constructor)
  Rational(long numerator, long denominator);

  // Exact binary value of a finite double.
  static Rational from_double(double value);

  // Accepts "p/q", "p", or "-p/q" with arbitrary-precision integers.
  static Rational parse(std::string_view text);

  double to_double() const { return value_.get_d(); }
  std::string to_string() const;

  bool is_zero() const { return sgn(value_) == 0; }
  int sign() const { return sgn(value_); }

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  Rational operator-() const;

  friend bool operator==(const Rational& lhs, const Rational& rhs) {
    return cmp(lhs.value_, rhs.value_) == 0;
  }
  friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
    const int c = cmp(lhs.value_, rhs.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  explicit Rational(mpq_class value) : value_(std::move(value)) {}

  mpq_class value_;
};

Rational abs(const Rational& value);

std::ostream& operator<<(std::ostream& os, const Rational& value);

}  // namespace onoff
