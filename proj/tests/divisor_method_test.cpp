#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "divapport/divisor_method.hpp"
#include "divapport/fuzzy.hpp"
#include "divapport/random.hpp"

using namespace divapport;

TEST(DivisorMethod, SainteLagueDivisors) {
  const auto m = DivisorMethod::sainte_lague();
  EXPECT_DOUBLE_EQ(m.divisor(0), 1.0);
  EXPECT_DOUBLE_EQ(m.divisor(3), 7.0);
  EXPECT_TRUE(m.exactly_linear());
}

TEST(DivisorMethod, EqualProportionsDivisors) {
  const auto m = DivisorMethod::equal_proportions();
  EXPECT_DOUBLE_EQ(m.divisor(0), 0.0);
  EXPECT_DOUBLE_EQ(m.divisor(2), std::sqrt(6.0));
  EXPECT_FALSE(m.exactly_linear());
}

TEST(DivisorMethod, HarmonicMeanDivisors) {
  const auto m = DivisorMethod::harmonic_mean();
  EXPECT_DOUBLE_EQ(m.divisor(0), 0.0);
  EXPECT_DOUBLE_EQ(m.divisor(1), 4.0 / 3.0);
  EXPECT_DOUBLE_EQ(m.divisor(2), 12.0 / 5.0);
}

TEST(DivisorMethod, ModifiedSainteLague) {
  const auto m = DivisorMethod::modified_sainte_lague();
  EXPECT_DOUBLE_EQ(m.divisor(0), 1.4);
  EXPECT_DOUBLE_EQ(m.divisor(1), 3.0);
  EXPECT_DOUBLE_EQ(m.divisor(2), 5.0);
  EXPECT_NEAR(m.delta(0.5), 2.2, 1e-15);
  EXPECT_DOUBLE_EQ(m.estimator_intercept(), 1.2);
}

TEST(DivisorMethod, SandwichParameters) {
  auto check = [](const DivisorMethod& m, double a, double lo, double hi) {
    const Sandwich s = m.sandwich();
    EXPECT_DOUBLE_EQ(s.alpha, a) << m.name();
    EXPECT_DOUBLE_EQ(s.beta_lo, lo) << m.name();
    EXPECT_DOUBLE_EQ(s.beta_hi, hi) << m.name();
  };
  check(DivisorMethod::equal_proportions(), 1.0, 0.0, 0.5);
  check(DivisorMethod::harmonic_mean(), 1.0, 0.0, 0.5);
  check(DivisorMethod::modified_sainte_lague(), 2.0, 1.0, 1.4);
  check(DivisorMethod::imperiali(), 1.0, 1.0, 2.0);
  check(DivisorMethod::danish(), 3.0, 1.0, 1.0);
  check(DivisorMethod::smallest_divisors(), 1.0, 0.0, 0.0);
}

TEST(DivisorMethod, SandwichHoldsOnGrid) {
  for (const auto& m : standard_methods()) {
    const Sandwich s = m.sandwich();
    for (int t = 0; t <= 4000; ++t) {
      const double x = t * 0.025;
      const double d = m.delta(x);
      EXPECT_LE(s.alpha * x + s.beta_lo, d * (1 + 1e-12) + 1e-12) << m.name() << " x=" << x;
      EXPECT_GE(s.alpha * x + s.beta_hi, d * (1 - 1e-12) - 1e-12) << m.name() << " x=" << x;
    }
  }
}

TEST(DivisorMethod, PowerMeansApproachUpperLineFromBelow) {
  for (auto p : {PowerMean::zero, PowerMean::minus_one}) {
    const auto m = DivisorMethod::power_mean(p);
    double prev_gap = std::numeric_limits<double>::infinity();
    for (int j = 1; j < 2000; ++j) {
      const double gap = (j + 0.5) - m.divisor(static_cast<std::uint64_t>(j));
      EXPECT_GT(gap, 0.0);
      EXPECT_LT(gap, prev_gap);
      prev_gap = gap;
    }
  }
  const auto two = DivisorMethod::power_mean(PowerMean::two);
  double prev_gap = std::numeric_limits<double>::infinity();
  for (int j = 1; j < 2000; ++j) {
    const double gap = two.divisor(static_cast<std::uint64_t>(j)) - (j + 0.5);
    EXPECT_GT(gap, 0.0);
    EXPECT_LT(gap, prev_gap);
    prev_gap = gap;
  }
}

TEST(DivisorMethod, InverseExamples) {
  EXPECT_DOUBLE_EQ(DivisorMethod::sainte_lague().delta_inv(5.0), 2.0);
  EXPECT_NEAR(DivisorMethod::equal_proportions().delta_inv(std::sqrt(12.0)), 3.0, 1e-12);
  EXPECT_DOUBLE_EQ(DivisorMethod::smallest_divisors().delta_inv(-5.0), -1.0);
}

TEST(DivisorMethod, InverseBelowFirstDivisorIsClamped) {
  for (const auto& m : standard_methods()) {
    const double y = m.d0() * 0.5 - 0.1;
    const double inv = m.delta_inv(y);
    EXPECT_GE(inv, -1.0) << m.name();
    EXPECT_LT(inv, 0.0) << m.name();
  }
}

TEST(DivisorMethod, InverseRoundTrips) {
  for (const auto& m : standard_methods()) {
    for (int t = 0; t <= 1000; ++t) {
      const double x = t * 0.37;
      EXPECT_NEAR(m.delta_inv(m.delta(x)), x, 1e-9 * std::max(1.0, x)) << m.name();
    }
  }
}

// floor(delta_inv(y)) + 1 counts the divisors <= y; compare with a linear search.
TEST(DivisorMethod, InverseFloorMatchesSearch) {
  SplitMix64 rng(99);
  for (const auto& m : standard_methods()) {
    for (int t = 0; t < 2000; ++t) {
      const double y = rng.unit() * 300.0;
      std::int64_t count = 0;
      while (m.divisor(static_cast<std::uint64_t>(count)) <= y) ++count;
      EXPECT_EQ(nudged_floor(m.delta_inv(y)) + 1, count) << m.name() << " y=" << y;
    }
  }
}

TEST(DivisorMethod, InverseAtExactDivisors) {
  for (const auto& m : standard_methods()) {
    for (std::uint64_t j = 0; j < 500; ++j) {
      EXPECT_EQ(nudged_floor(m.delta_inv(m.divisor(j))), static_cast<long long>(j)) << m.name();
      EXPECT_EQ(nudged_ceil(m.delta_inv(m.divisor(j))), static_cast<long long>(j)) << m.name();
    }
  }
}

TEST(DivisorMethod, StationaryFamily) {
  const auto m = DivisorMethod::stationary(0.3);
  EXPECT_DOUBLE_EQ(m.divisor(4), 4.3);
  EXPECT_EQ(m.name(), "stationary:0.3");
  EXPECT_THROW(DivisorMethod::stationary(1.5), Error);
}

TEST(DivisorMethod, RejectsBadLinearParameters) {
  EXPECT_THROW(DivisorMethod::linear(0.0, 1.0), Error);
  EXPECT_THROW(DivisorMethod::linear(1.0, -0.5), Error);
  EXPECT_THROW(DivisorMethod::linear(std::nan(""), 0.0), Error);
}

TEST(DivisorMethod, LinearInterceptAboveSlopeClampsLowerLine) {
  const auto m = DivisorMethod::linear(1.0, 3.0);
  EXPECT_DOUBLE_EQ(m.sandwich().beta_lo, 1.0);
  EXPECT_DOUBLE_EQ(m.sandwich().beta_hi, 3.0);
}

TEST(DivisorMethod, ParseNames) {
  for (const auto& m : standard_methods()) EXPECT_EQ(parse_method(m.name()).name(), m.name());
  EXPECT_DOUBLE_EQ(parse_method("linear:1,0.75").divisor(2), 2.75);
  EXPECT_DOUBLE_EQ(parse_method("stationary:0.5").divisor(0), 0.5);
  EXPECT_EQ(parse_method("power-mean:-inf").power(), PowerMean::minus_infinity);
  EXPECT_EQ(parse_method("power-mean:inf").power(), PowerMean::plus_infinity);
  EXPECT_EQ(parse_method("power-mean:2").power(), PowerMean::two);
  EXPECT_THROW(parse_method("dhondt"), Error);
  EXPECT_THROW(parse_method("power-mean:3"), Error);
  EXPECT_THROW(parse_method("linear:1"), Error);
  EXPECT_THROW(parse_method("linear:1,x"), Error);
}

TEST(DivisorMethod, StandardTableOrder) {
  const auto methods = standard_methods();
  ASSERT_EQ(methods.size(), 8u);
  EXPECT_EQ(methods.front().name(), "smallest-divisors");
  EXPECT_EQ(methods.back().name(), "danish");
}
