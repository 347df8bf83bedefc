#include "onoff/rational.hpp"

#include <cmath>
#include <ostream>

#include "onoff/error.hpp"

namespace onoff {
namespace {

mpz_class parse_integer(std::string_view text, std::string_view whole) {
  std::string digits(text);
  if (digits.empty() || digits == "-" || digits == "+") {
    throw Error(ErrorCode::kParse, "bad rational '" + std::string(whole) + "'");
  }
  const std::size_t start = (digits[0] == '-' || digits[0] == '+') ? 1 : 0;
  for (std::size_t i = start; i < digits.size(); ++i) {
    if (digits[i] < '0' || digits[i] > '9') {
      throw Error(ErrorCode::kParse, "bad rational '" + std::string(whole) + "'");
    }
  }
  if (digits[0] == '+') digits.erase(0, 1);
  return mpz_class(digits, 10);
}

}  // namespace

Rational::Rational(long numerator) : value_(numerator) {}

Rational::Rational(long numerator, long denominator) {
  if (denominator == 0) {
    throw Error(ErrorCode::kDivisionByZero, "zero denominator");
  }
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational Rational::from_double(double value) {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::kInvalidArgument, "non-finite double");
  }
  return Rational(mpq_class(value));
}

Rational Rational::parse(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(mpq_class(parse_integer(text, text)));
  }
  mpz_class num = parse_integer(text.substr(0, slash), text);
  mpz_class den = parse_integer(text.substr(slash + 1), text);
  if (den == 0) {
    throw Error(ErrorCode::kDivisionByZero, "zero denominator in '" + std::string(text) + "'");
  }
  mpq_class q(num, den);
  q.canonicalize();
  return Rational(std::move(q));
}

std::string Rational::to_string() const { return value_.get_str(10); }

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) {
    throw Error(ErrorCode::kDivisionByZero, "division by zero");
  }
  value_ /= rhs.value_;
  return *this;
}

Rational Rational::operator-() const { return Rational(mpq_class(-value_)); }

Rational abs(const Rational& value) { return value.sign() < 0 ? -value : value; }

std::ostream& operator<<(std::ostream& os, const Rational& value) {
  return os << value.to_string();
}

}  // namespace onoff
