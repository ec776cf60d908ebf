#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "opart/alpha_system.hpp"
#include "opart/qseries.hpp"

namespace opart {
namespace {

std::vector<std::int64_t> values(const AlphaSystem& s) {
  std::vector<std::int64_t> out;
  for (const auto& a : s.sums()) out.push_back(a.value);
  return out;
}

TEST(AlphaSystem, PowersOfTwoGiveConsecutiveSums) {
  const auto sys = build_system({1, 2, 4}, 7);
  EXPECT_EQ(values(sys), (std::vector<std::int64_t>{1, 2, 3, 4, 5, 6, 7}));
  std::vector<int> w;
  for (const auto& a : sys.sums()) w.push_back(a.weight);
  EXPECT_EQ(w, (std::vector<int>{1, 1, 2, 1, 2, 2, 3}));
  EXPECT_EQ(sys.v(3), 1);
  EXPECT_EQ(sys.v(5), 1);
  EXPECT_EQ(sys.v(6), 2);
  EXPECT_EQ(sys.v(7), 1);
  EXPECT_EQ(sys.a(4), 8);  // sentinel N + a(1)
  EXPECT_EQ(sys.alpha(8), 8);
}

TEST(AlphaSystem, SchurSystem) {
  const auto sys = build_system({1, 2}, 3);
  EXPECT_EQ(values(sys), (std::vector<std::int64_t>{1, 2, 3}));
  EXPECT_EQ(sys.w(3), 2);
  EXPECT_EQ(sys.v(3), 1);
}

TEST(AlphaSystem, RejectsInadmissibleInput) {
  EXPECT_THROW(build_system({1, 2, 3}, 20), SumsNotDistinct);  // 1 + 2 = 3
  EXPECT_THROW(build_system({2, 3, 4}, 20), DominanceViolated);  // sums distinct, 4 <= 2 + 3
  EXPECT_THROW(build_system({1, 2, 4}, 6), ModulusTooSmall);
  EXPECT_THROW(build_system({}, 6), InvalidInput);
  EXPECT_THROW(build_system({2, 1}, 6), InvalidInput);
  EXPECT_THROW(build_system({0, 1}, 6), InvalidInput);
  std::vector<std::int64_t> big;
  for (int i = 0; i < 17; ++i) big.push_back(std::int64_t{1} << i);
  EXPECT_THROW(build_system(big, std::int64_t{1} << 18), TooManyGenerators);
}

TEST(AlphaSystem, AcceptsNonPowerSystems) {
  EXPECT_NO_THROW(build_system({1, 3, 5}, 9));
  EXPECT_NO_THROW(build_system({2, 3, 7, 13}, 25));
}

TEST(AlphaSystem, BetaIsLeastPositiveResidue) {
  const auto seven = build_system({1, 2, 4}, 7);
  const auto three = build_system({1, 2}, 3);
  EXPECT_EQ(seven.beta(-8), 6);
  EXPECT_EQ(seven.beta(7), 7);
  EXPECT_EQ(seven.beta(0), 7);
  EXPECT_EQ(three.beta(5), 2);
  for (std::int64_t m = -100; m <= 100; ++m) {
    const auto b = seven.beta(m);
    EXPECT_GE(b, 1);
    EXPECT_LE(b, 7);
    EXPECT_EQ((b - m) % 7, 0);
  }
}

TEST(AlphaSystem, StructuralInvariantsOnRandomSystems) {
  std::mt19937 rng(20261018);
  for (int trial = 0; trial < 200; ++trial) {
    const int r = 1 + static_cast<int>(rng() % 5);
    std::vector<std::int64_t> a;
    std::int64_t prefix = 0;
    for (int k = 0; k < r; ++k) {
      const std::int64_t next = prefix + 1 + static_cast<std::int64_t>(rng() % 4);
      a.push_back(next);
      prefix += next;
    }
    const std::int64_t n = prefix + static_cast<std::int64_t>(rng() % 5);
    const auto sys = build_system(a, n);
    ASSERT_EQ(sys.num_sums(), (std::size_t{1} << r) - 1);
    for (int k = 0; k < r; ++k) EXPECT_EQ(sys.alpha(std::size_t{1} << k), sys.a(k + 1));
    for (const auto& s : sys.sums()) {
      std::int64_t total = 0;
      int count = 0;
      std::int64_t smallest = 0;
      for (int i = r - 1; i >= 0; --i)
        if (s.mask & (1u << i)) {
          total += a[static_cast<std::size_t>(i)];
          ++count;
          smallest = a[static_cast<std::size_t>(i)];
        }
      EXPECT_EQ(total, s.value);
      EXPECT_EQ(count, s.weight);
      EXPECT_EQ(smallest, s.smallest);
      // Anything strictly between a(k) and a(k+1) has a(k) as its largest summand.
      for (int k = 1; k <= r; ++k)
        if (s.value > sys.a(k) && s.value < sys.a(k + 1)) {
          EXPECT_TRUE(s.mask & (1u << (k - 1)));
        }
    }
    for (int i = 1; i <= r; ++i) {
      EXPECT_EQ(sys.w(sys.a(i)), 1);
      EXPECT_EQ(sys.v(sys.a(i)), sys.a(i));
    }
  }
}

TEST(AlphaWeightSum, Examples) {
  const auto sys = build_system({1, 2, 4}, 7);
  EXPECT_EQ(alpha_weight_sum(sys, 3, 1), QLaurent::monomial(-1) + QLaurent::monomial(-2));
  EXPECT_EQ(alpha_weight_sum(sys, 3, 0), QLaurent::one());
  EXPECT_EQ(alpha_weight_sum(sys, 4, 3), QLaurent::monomial(-7));
  EXPECT_TRUE(alpha_weight_sum(sys, 3, 3).is_zero());
  EXPECT_TRUE(alpha_weight_sum(sys, 4, 4).is_zero());
}

TEST(AlphaWeightSum, AllWeightsCoverEverySum) {
  const auto sys = build_system({1, 3, 5}, 9);
  std::size_t terms = 0;
  for (int w = 0; w <= sys.r(); ++w) terms += alpha_weight_sum(sys, sys.r() + 1, w).num_terms();
  EXPECT_EQ(terms, std::size_t{1} << sys.r());  // 2^r - 1 sums plus the weight-0 constant
}

}  // namespace
}  // namespace opart
