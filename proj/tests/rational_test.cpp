#include <gtest/gtest.h>

#include "fewpal/rational.hpp"

using namespace fewpal;

TEST(Rational, NormalizesAndCompares) {
  EXPECT_EQ(Rational(6, 4), Rational(3, 2));
  EXPECT_EQ(Rational(3, -6), Rational(-1, 2));
  EXPECT_LT(Rational(5, 2), Rational(28, 11));
  EXPECT_LT(Rational(28, 11), Rational(13, 5));
  EXPECT_EQ(Rational(7, 3).str(), "7/3");
  EXPECT_EQ(Rational(4).str(), "4");
  EXPECT_THROW(Rational(1, 0), std::domain_error);
}

TEST(Rational, Arithmetic) {
  EXPECT_EQ(Rational(1, 3) + Rational(1, 6), Rational(1, 2));
  EXPECT_EQ(Rational(1, 3) - Rational(1, 2), Rational(-1, 6));
  EXPECT_EQ(Rational(2, 3) * Rational(9, 4), Rational(3, 2));
  EXPECT_EQ(Rational(2, 3) / Rational(4, 9), Rational(3, 2));
  EXPECT_EQ(Rational(39, 2).ceil(), 20);
  EXPECT_EQ(Rational(39, 2).floor(), 19);
  EXPECT_EQ(Rational(-3, 2).floor(), -2);
}

TEST(Rational, Parse) {
  EXPECT_EQ(Rational::parse("28/11"), Rational(28, 11));
  EXPECT_EQ(Rational::parse("3"), Rational(3));
  EXPECT_THROW(Rational::parse("a/b"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("1/0"), std::domain_error);
}

TEST(ExponentBound, StrictAndNonStrict) {
  const auto plus = parse_bound("7/3+");
  EXPECT_TRUE(plus.strict);
  EXPECT_FALSE(plus.forbids(Rational(7, 3)));
  EXPECT_TRUE(plus.forbids(Rational(12, 5)));
  const auto cube = parse_bound("3");
  EXPECT_FALSE(cube.strict);
  EXPECT_TRUE(cube.forbids(Rational(3)));
  EXPECT_EQ(plus.str(), "7/3+");
  EXPECT_EQ(cube.str(), "3");
  EXPECT_THROW(parse_bound("1"), std::invalid_argument);
}

TEST(ExponentBound, MinViolatingLength) {
  // period 3 under 7/3+: length 8 has exponent 8/3 > 7/3, length 7 is 7/3
  EXPECT_EQ(parse_bound("7/3+").min_violating_length(3), 8u);
  EXPECT_EQ(parse_bound("3").min_violating_length(2), 6u);
  EXPECT_EQ(parse_bound("3+").min_violating_length(2), 7u);
  EXPECT_EQ(parse_bound("5/2").min_violating_length(3), 8u);
}
