#include "boxcert/rational.hpp"

#include <gtest/gtest.h>

using boxcert::Rational;

TEST(Rational, StoredInLowestTerms) {
  const Rational r(6, -8);
  EXPECT_EQ(r.str(), "-3/4");
  EXPECT_EQ(r.denominator(), 4);
  EXPECT_EQ(Rational(4, 2).str(), "2");
}

TEST(Rational, ExactArithmetic) {
  EXPECT_EQ(Rational(1, 3) + Rational(1, 6), Rational(1, 2));
  EXPECT_EQ(Rational(3, 4) * Rational(8, 7) / Rational(6, 7), Rational(1));
  EXPECT_LT(Rational(2, 3), Rational(3, 4));
  EXPECT_EQ(-Rational(1, 2) - Rational(1, 2), Rational(-1));
}

TEST(Rational, DivisionByZeroThrows) {
  EXPECT_THROW(Rational(1) / Rational(0), boxcert::DivisionByZero);
  EXPECT_THROW(Rational(1, 0), boxcert::DivisionByZero);
  EXPECT_THROW(Rational::parse("3/0"), boxcert::DivisionByZero);
}

TEST(Rational, ParsesOnlyIntegerFractions) {
  EXPECT_EQ(Rational::parse("7/8"), Rational(7, 8));
  EXPECT_EQ(Rational::parse("-12"), Rational(-12));
  EXPECT_EQ(Rational::parse("10/4").str(), "5/2");
  EXPECT_THROW(Rational::parse("0.75"), boxcert::RationalParseError);
  EXPECT_THROW(Rational::parse("1/-2"), boxcert::RationalParseError);
  EXPECT_THROW(Rational::parse(""), boxcert::RationalParseError);
  EXPECT_THROW(Rational::parse("1e3"), boxcert::RationalParseError);
}

TEST(Rational, ArbitraryPrecision) {
  Rational big = Rational::parse("123456789012345678901234567890/7");
  EXPECT_EQ((big * Rational(7)).str(), "123456789012345678901234567890");
}
