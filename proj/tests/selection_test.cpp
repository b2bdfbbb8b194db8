#include <gtest/gtest.h>

#include <algorithm>
#include <vector>

#include "divapport/core.hpp"
#include "divapport/random.hpp"
#include "divapport/selection.hpp"

using namespace divapport;

TEST(Selection, WorkedExample) {
  for (auto backend : {SelectBackend::quick, SelectBackend::mom}) {
    std::vector<int> buf{10, 8, 5, 8, 10, 8};
    EXPECT_EQ(select(backend, std::span<int>(buf), 4, 7), 8);
    EXPECT_EQ(buf[3], 8);
    std::vector<int> again{10, 8, 5, 8, 10, 8};
    EXPECT_EQ(select(backend, std::span<int>(again), 1, 7), 5);
    std::vector<int> last{10, 8, 5, 8, 10, 8};
    EXPECT_EQ(select(backend, std::span<int>(last), 6, 7), 10);
  }
}

TEST(Selection, PartitionsAroundResult) {
  SplitMix64 rng(41);
  for (int t = 0; t < 500; ++t) {
    const std::size_t size = 1 + rng.below(400);
    std::vector<double> buf(size);
    for (auto& x : buf) x = static_cast<double>(rng.below(20));
    const std::size_t r = 1 + rng.below(size);
    for (auto backend : {SelectBackend::quick, SelectBackend::mom}) {
      std::vector<double> work = buf;
      const double pick = select(backend, std::span<double>(work), r, rng.next());
      for (std::size_t i = 0; i < r - 1; ++i) EXPECT_LE(work[i], pick);
      for (std::size_t i = r; i < size; ++i) EXPECT_GE(work[i], pick);
      std::vector<double> a = buf;
      std::vector<double> b = work;
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      EXPECT_EQ(a, b);
      EXPECT_EQ(pick, a[r - 1]);
    }
  }
}

TEST(Selection, KeyProjection) {
  std::vector<Candidate> cands{{3.0, 0, 0}, {1.0, 1, 0}, {2.0, 2, 0}, {1.0, 3, 1}};
  const Candidate& c = quickselect(std::span<Candidate>(cands), 3, 1, &Candidate::value);
  EXPECT_EQ(c.value, 2.0);
  EXPECT_EQ(c.party, 2u);
}

TEST(Selection, RankOutOfRange) {
  std::vector<int> buf{1, 2, 3};
  EXPECT_THROW(quickselect(std::span<int>(buf), 0, 1), Error);
  EXPECT_THROW(mom_select(std::span<int>(buf), 4), Error);
  std::vector<int> empty;
  EXPECT_THROW(quickselect(std::span<int>(empty), 1, 1), Error);
}

TEST(Selection, AllEqual) {
  std::vector<int> buf(10'000, 7);
  SelectStats stats;
  EXPECT_EQ(quickselect(std::span<int>(buf), 5000, 1, std::identity{}, &stats), 7);
  EXPECT_LT(stats.comparisons, 40'000u);
}

TEST(Selection, MedianOfMediansIsLinearOnAdversarialInput) {
  for (std::size_t n : {1'000u, 10'000u, 100'000u}) {
    std::vector<int> buf(n);
    for (std::size_t i = 0; i < n; ++i) buf[i] = static_cast<int>(n - i);
    SelectStats stats;
    EXPECT_EQ(mom_select(std::span<int>(buf), n / 2, std::identity{}, &stats),
              static_cast<int>(n / 2));
    EXPECT_LE(stats.comparisons, 24 * n) << "n=" << n;
  }
}

TEST(Selection, ParseBackend) {
  EXPECT_EQ(parse_select_backend("quick"), SelectBackend::quick);
  EXPECT_EQ(parse_select_backend("mom"), SelectBackend::mom);
  EXPECT_THROW(parse_select_backend("heap"), Error);
}
