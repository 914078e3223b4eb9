#include <gtest/gtest.h>

#include <cmath>

#include "fewpal/cubic.hpp"

using namespace fewpal;

TEST(Interval, OutwardRoundingContainsExactValues) {
  const Interval third = Interval::of(Rational(1, 3));
  EXPECT_TRUE(third.contains(1.0 / 3.0));
  const Interval x = third * Interval(3.0);
  EXPECT_TRUE(x.contains(1.0));
  EXPECT_GT(x.width(), 0.0);
  EXPECT_TRUE(sqr(Interval{-1.0, 2.0}).contains(0.0));
  EXPECT_GE(sqr(Interval{-1.0, 2.0}).lo, 0.0);
  EXPECT_THROW(sqrt(Interval{-2.0, -1.0}), std::domain_error);
}

TEST(Cubic, RootsSatisfyTheRelations) {
  const auto r = cubic_roots();
  EXPECT_LT(r.beta.width(), 1e-14);
  EXPECT_NEAR(r.beta.mid(), 1.754877666246693, 1e-14);
  // β + 2 Re λ = 2 and β |λ|² = 1 (coefficients of x³ - 2x² + x - 1)
  const Interval sum = r.beta + Interval(2.0) * r.lambda.re;
  EXPECT_TRUE(sum.contains(2.0));
  const Interval prod = r.beta * r.lambda.norm2();
  EXPECT_TRUE(prod.contains(1.0));
  EXPECT_TRUE(CubicRoots::residual(r.beta).contains(0.0));
}

TEST(Cubic, ClosedFormReproducesRecurrence) {
  // x_{n+3} = 2x_{n+2} - x_{n+1} + x_n
  for (auto seed : {std::array<std::int64_t, 3>{6, 10, 17}, {4, 7, 13}, {11, 21, 36}, {10, 15, 26}}) {
    const auto k = sequence_solver(seed[0], seed[1], seed[2]);
    std::int64_t a = seed[0], b = seed[1], c = seed[2];
    for (std::size_t n = 0; n <= 30; ++n) {
      EXPECT_EQ(k.exact(n), a);
      EXPECT_TRUE(k.value(n).contains(static_cast<double>(a)) || std::abs(k.value(n).mid() - a) < 1e-6 * a) << n;
      const std::int64_t d = 2 * c - b + a;
      a = b;
      b = c;
      c = d;
    }
  }
}

TEST(Cubic, Constants) {
  EXPECT_NEAR(sequence_solver(6, 10, 17).A.mid(), 5.581322403411, 1e-9);
  EXPECT_NEAR(sequence_solver(4, 7, 13).A.mid(), 4.213215630457, 1e-9);
  EXPECT_NEAR(sequence_solver(11, 21, 36).A.mid(), 11.530751580, 1e-6);
  EXPECT_NEAR(sequence_solver(10, 15, 26).A.mid(), 8.704306843, 1e-6);
}

TEST(Cubic, AsymptoticExponent) {
  const Interval e = asymptotic_exponent();
  EXPECT_LT(e.width(), 1e-10);
  EXPECT_NEAR(e.mid(), 2.480862716147, 1e-11);
}

TEST(Cubic, FamilyRatiosBounded) {
  const std::vector<std::pair<std::string, Rational>> words{
      {"p", Rational(3, 2)}, {"nu_p", Rational(3, 2)}, {"mu_p", Rational(17, 11)}};
  for (const auto& [w, target] : words) {
    for (const auto& spec : family_ratio_specs(w)) {
      const auto r = family_ratio_analysis(spec, target);
      EXPECT_EQ(r.verdict(), "bounded by target") << w << " " << spec.family;
      EXPECT_LE(r.precision, 1e-12);
    }
  }
}

TEST(Cubic, ExactRatiosMatchDirectSums) {
  // nu_p family C: R(J) = (2 + sum x_{2j}) / x_{2J} with x = 4, 7, 13, ...
  const auto specs = family_ratio_specs("nu_p");
  const auto r = family_ratio_analysis(specs[2], Rational(3, 2), 6);
  std::vector<std::int64_t> x{4, 7, 13};
  while (x.size() < 20) x.push_back(2 * x[x.size() - 1] - x[x.size() - 2] + x[x.size() - 3]);
  std::int64_t sum = 2;
  for (std::size_t J = 0; J <= 6; ++J) {
    sum += x[2 * J];
    EXPECT_EQ(r.exact[J].second, Rational(sum, x[2 * J]));
  }
  EXPECT_EQ(r.max_exact, Rational(3, 2));
  EXPECT_EQ(r.witness_n, 0u);
}

TEST(Cubic, TargetBelowSupremumIsRejected) {
  const auto r = family_ratio_analysis(family_ratio_specs("mu_p")[1], Rational(3, 2));
  EXPECT_EQ(r.verdict(), "exceeds target");
}
