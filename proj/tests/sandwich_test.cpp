#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "divapport/fuzz.hpp"
#include "divapport/sandwich.hpp"

using namespace divapport;

TEST(Window, SainteLagueSymmetricExample) {
  const std::vector<double> votes{1, 1, 1, 1};
  const auto w = compute_window(DivisorMethod::sainte_lague(), votes, 4);
  EXPECT_DOUBLE_EQ(w.eps, 1.0);
  EXPECT_DOUBLE_EQ(w.x_bar, 8.0);
  EXPECT_EQ(w.index_set_size, 4u);
  EXPECT_DOUBLE_EQ(w.a_lo, 1.0);
  EXPECT_DOUBLE_EQ(w.a_hi, 3.0);
  EXPECT_EQ(w.candidates.size(), 8u);
  EXPECT_EQ(w.k_hat, 4);
  const auto r = sandwich_select(DivisorMethod::sainte_lague(), votes, 4);
  EXPECT_EQ(r.allocation.undisputed, (std::vector<std::uint64_t>{1, 1, 1, 1}));
  EXPECT_DOUBLE_EQ(r.allocation.astar, 1.0);
}

TEST(Window, SingleParty) {
  for (const auto& m : standard_methods()) {
    for (std::uint64_t k : {1u, 2u, 7u, 50u}) {
      const std::vector<double> votes{3.5};
      const auto r = sandwich_select(m, votes, k);
      EXPECT_EQ(r.allocation.undisputed[0], k) << m.name();
      EXPECT_DOUBLE_EQ(r.allocation.astar, m.divisor(k - 1) / 3.5);
    }
  }
}

TEST(Window, CutoffBelowNextDivisor) {
  SplitMix64 rng(31);
  for (int t = 0; t < 300; ++t) {
    const FuzzCase fc = sample_fuzz_case(rng, 50, 8);
    const auto w = compute_window(fc.method, fc.votes, fc.k);
    const double vmax = *std::max_element(fc.votes.begin(), fc.votes.end());
    EXPECT_LT(w.x_bar, fc.method.divisor(fc.k) / vmax);
    EXPECT_GT(w.x_bar, fc.method.divisor(fc.k - 1) / vmax);
  }
}

TEST(Window, SoundAndBounded) {
  SplitMix64 rng(32);
  for (int t = 0; t < 1000; ++t) {
    const FuzzCase fc = sample_fuzz_case(rng, 100, 10);
    const auto ref = enumerate_oracle(fc.method, fc.votes, fc.k);
    auto w = compute_window(fc.method, fc.votes, fc.k);
    const Sandwich s = fc.method.sandwich();
    EXPECT_LE(w.a_lo, ref.astar) << fc.describe();
    EXPECT_GE(w.a_hi, ref.astar) << fc.describe();
    EXPECT_LE(static_cast<double>(w.candidates.size()),
              2.0 * (1.0 + (s.beta_hi - s.beta_lo) / s.alpha) *
                  static_cast<double>(w.index_set_size));
    ASSERT_GE(w.k_hat, 1);
    ASSERT_LE(static_cast<std::size_t>(w.k_hat), w.candidates.size());
    std::nth_element(w.candidates.begin(), w.candidates.begin() + (w.k_hat - 1),
                     w.candidates.end(),
                     [](const Candidate& a, const Candidate& b) { return a.value < b.value; });
    EXPECT_TRUE(Fuzzy{}.eq(w.candidates[static_cast<std::size_t>(w.k_hat - 1)].value, ref.astar))
        << fc.describe();
  }
}

TEST(Window, ExcludedCountMatchesBruteForce) {
  SplitMix64 rng(33);
  const Fuzzy fuzzy;
  for (int t = 0; t < 500; ++t) {
    const FuzzCase fc = sample_fuzz_case(rng, 40, 6);
    const auto w = compute_window(fc.method, fc.votes, fc.k);
    std::uint64_t strict = 0;
    std::uint64_t clear = 0;
    const double threshold = fc.method.d0() / w.x_bar;
    for (double v : fc.votes) {
      if (!(v > threshold)) continue;
      for (std::uint64_t j = 0; fc.method.divisor(j) / v < w.a_lo; ++j) {
        ++strict;
        if (fuzzy.lt(fc.method.divisor(j) / v, w.a_lo)) ++clear;
      }
    }
    // Values within rounding distance of a_lo may land on either side.
    EXPECT_LE(clear, w.excluded) << fc.describe();
    EXPECT_GE(strict, w.excluded) << fc.describe();
  }
}

TEST(Sandwich, MatchesOracleWithBothBackends) {
  SplitMix64 rng(34);
  for (int t = 0; t < 500; ++t) {
    const FuzzCase fc = sample_fuzz_case(rng, 100, 10);
    const auto ref = enumerate_oracle(fc.method, fc.votes, fc.k);
    for (auto backend : {SelectBackend::quick, SelectBackend::mom}) {
      const auto r = sandwich_select(fc.method, fc.votes, fc.k, backend);
      EXPECT_TRUE(r.allocation.same_seats(ref)) << fc.describe();
      EXPECT_TRUE(Fuzzy{}.eq(r.allocation.astar, ref.astar));
      EXPECT_EQ(r.stats.window_size, compute_window(fc.method, fc.votes, fc.k).candidates.size());
    }
  }
}

TEST(Sandwich, PermutationMovesSeatsWithParties) {
  SplitMix64 rng(35);
  for (int t = 0; t < 200; ++t) {
    const FuzzCase fc = sample_fuzz_case(rng, 60, 8);
    const auto base = sandwich_select(fc.method, fc.votes, fc.k).allocation;
    std::vector<std::size_t> perm(fc.votes.size());
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
    std::vector<double> shuffled(fc.votes.size());
    for (std::size_t i = 0; i < perm.size(); ++i) shuffled[i] = fc.votes[perm[i]];
    const auto r = sandwich_select(fc.method, shuffled, fc.k).allocation;
    EXPECT_EQ(r.residual, base.residual);
    for (std::size_t i = 0; i < perm.size(); ++i) {
      EXPECT_EQ(r.undisputed[i], base.undisputed[perm[i]]) << fc.describe();
      EXPECT_EQ(r.tied[i], base.tied[perm[i]]);
    }
  }
}

TEST(Sandwich, ReportsTies) {
  const std::vector<double> votes{2, 1, 1};
  const auto r = sandwich_select(DivisorMethod::greatest_divisors(), votes, 2);
  EXPECT_EQ(r.allocation.undisputed, (std::vector<std::uint64_t>{1, 0, 0}));
  EXPECT_EQ(r.allocation.residual, 1u);
  EXPECT_EQ(r.allocation.tied_count(), 3u);
}

TEST(Sandwich, LargeHouse) {
  const auto votes = gen_votes(VoteDistribution::exponential(2.0), 500, 4);
  const auto m = DivisorMethod::danish();
  const auto r = sandwich_select(m, votes, 1'000'000);
  EXPECT_TRUE(verify_allocation(m, votes, 1'000'000, r.allocation));
  EXPECT_LE(r.stats.window_size, 2 * votes.size());
}
