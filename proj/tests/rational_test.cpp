#include "onoff/rational.hpp"

#include <gtest/gtest.h>

#include "onoff/error.hpp"

namespace onoff {
namespace {

TEST(RationalTest, LowestTerms) {
  EXPECT_EQ(Rational(6, 8).to_string(), "3/4");
  EXPECT_EQ(Rational(3, -6).to_string(), "-1/2");
  EXPECT_EQ(Rational(4, 2).to_string(), "2");
}

TEST(RationalTest, ExactArithmetic) {
  const Rational third(1, 3);
  EXPECT_EQ(third + third + third, Rational(1));
  EXPECT_EQ(Rational(3, 4) * Rational(2, 3), Rational(1, 2));
  EXPECT_EQ(Rational(1, 2) / Rational(1, 4), Rational(2));
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
  EXPECT_EQ(abs(Rational(-2, 7)), Rational(2, 7));
}

TEST(RationalTest, DivisionByZeroIsAnError) {
  EXPECT_THROW(Rational(1, 0), Error);
  try {
    (void)(Rational(1) / Rational(0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDivisionByZero);
  }
  EXPECT_THROW(Rational::parse("3/0"), Error);
}

TEST(RationalTest, Parse) {
  EXPECT_EQ(Rational::parse("3/4"), Rational(3, 4));
  EXPECT_EQ(Rational::parse(" 10/20 "), Rational(1, 2));
  EXPECT_EQ(Rational::parse("-5"), Rational(-5));
  EXPECT_EQ(Rational::parse("123456789012345678901234567890/123456789012345678901234567890"),
            Rational(1));
  EXPECT_THROW(Rational::parse("0.5"), Error);
  EXPECT_THROW(Rational::parse("a/b"), Error);
  EXPECT_THROW(Rational::parse(""), Error);
}

TEST(RationalTest, FromDoubleIsExact) {
  EXPECT_EQ(Rational::from_double(0.5), Rational(1, 2));
  EXPECT_EQ(Rational::from_double(0.375), Rational(3, 8));
  // 0.1 is not representable; the conversion keeps the binary value.
  EXPECT_NE(Rational::from_double(0.1), Rational(1, 10));
}

}  // namespace
}  // namespace onoff
