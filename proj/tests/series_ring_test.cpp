#include <gtest/gtest.h>

#include <functional>
#include <random>
#include <vector>

#include "opart/qseries.hpp"
#include "opart/xseries.hpp"

namespace opart {
namespace {

QLaurent q(Exp e, std::size_t d = 0, long long c = 1, Exp trunc = QLaurent::kExact) {
  return QLaurent::monomial(e, d, c, trunc);
}

// Gaussian binomial by brute force: the coefficient of q^k in [m r]_q counts
// r-subsets of {1..m} whose sum exceeds 1+...+r by k.
QLaurent gaussian_by_subsets(int m, int r) {
  QLaurent out;
  if (r < 0 || r > m) return out;
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    if (__builtin_popcount(mask) != r) continue;
    Exp sum = 0;
    for (int i = 0; i < m; ++i)
      if (mask & (1u << i)) sum += i + 1;
    out += q(sum - r * (r + 1) / 2);
  }
  return out;
}

TEST(QLaurent, RingExamples) {
  const Exp t = 10;
  EXPECT_EQ((q(0, 0, 1, t) + q(1, 0, 1, t)) * (q(0, 0, 1, t) - q(1, 0, 1, t)), q(0, 0, 1, t) - q(2, 0, 1, t));
  EXPECT_EQ(QLaurent::one().scale_by_monomial(-3, 1, -1), q(-3, 1, -1));
  const QLaurent lhs = (q(-1, 0, 1, 5) + q(0, 0, 1, 5)) * (q(1, 0, 1, 5) + q(0, 1, 1, 5));
  const QLaurent rhs = q(0) + q(1) + q(-1, 1) + q(0, 1);
  EXPECT_TRUE(lhs.agrees_with(rhs, lhs.trunc()));
  EXPECT_EQ(lhs.trunc(), 4);  // the q^-1 factor costs one order of precision
}

TEST(QLaurent, PrecisionIsTracked) {
  const QLaurent series = q(0, 0, 1, 20) + q(3, 0, 2, 20);
  EXPECT_EQ((series + q(0, 0, 1, 15)).trunc(), 15);
  EXPECT_EQ((series * q(-4)).trunc(), 16);
  EXPECT_EQ((series * q(4)).trunc(), 24);
  EXPECT_EQ((series * series).trunc(), 20);
  EXPECT_TRUE((QLaurent() * series).is_exact());
  EXPECT_THROW((void)series.coefficient(21), InsufficientPrecision);
  EXPECT_THROW((void)series.truncated(30), InsufficientPrecision);
  EXPECT_TRUE(series.coefficient(21 - 1).is_zero());
}

TEST(QLaurent, DivisionInvertsMultiplication) {
  const Exp t = 30;
  const QLaurent den = QLaurent::one() - q(2, 1);
  const QLaurent num = q(-3, 0, 1, t) + q(5, 2, -4, t) + q(11, 1, 3, t);
  const QLaurent quot = num.divided_by(den);
  EXPECT_TRUE((quot * den).agrees_with(num, quot.trunc()));
  EXPECT_THROW((void)num.divided_by(q(0, 1)), NonUnitLeadingTerm);
  EXPECT_THROW((void)QLaurent::one().divided_by(den), InvalidInput);
}

TEST(QLaurent, ToString) {
  EXPECT_EQ((q(0) + q(1, 0, 2) + q(8) + q(8, 1, 2) + q(8, 2)).to_string(), "1 + 2q + (1 + 2d + d^2)q^8");
  EXPECT_EQ(q(-3, 1, -1).to_string(), "-dq^-3");
  EXPECT_EQ(QLaurent::one(4).to_string(), "1 + O(q^5)");
}

// Ring laws on random small operands, with mixed precision.
TEST(QLaurent, RingLawsOnRandomOperands) {
  std::mt19937 rng(7);
  const auto random_series = [&](Exp trunc) {
    QLaurent s = QLaurent::zero(trunc);
    const int terms = static_cast<int>(rng() % 6);
    for (int i = 0; i < terms; ++i)
      s += q(static_cast<Exp>(rng() % 13) - 4, rng() % 3, static_cast<long long>(rng() % 7) - 3, trunc);
    return s;
  };
  for (int trial = 0; trial < 300; ++trial) {
    const QLaurent a = random_series(12), b = random_series(12), c = random_series(QLaurent::kExact);
    const auto same = [](const QLaurent& x, const QLaurent& y) {
      const Exp t = std::min(x.trunc(), y.trunc());
      return x.agrees_with(y, t);
    };
    EXPECT_TRUE(same(a + b, b + a));
    EXPECT_TRUE(same(a * b, b * a));
    EXPECT_TRUE(same((a * b) * c, a * (b * c)));
    EXPECT_TRUE(same(a * (b + c), a * b + a * c));
    EXPECT_EQ(a * QLaurent::one(), a);
    EXPECT_TRUE((a - a).is_zero());
  }
}

TEST(QBinomial, Examples) {
  EXPECT_EQ(qbinomial(4, 2, 1), q(0) + q(1) + q(2, 0, 2) + q(3) + q(4));
  EXPECT_EQ(qbinomial(5, 0, -3), QLaurent::one());
  EXPECT_EQ(qbinomial(3, 1, -2), q(0) + q(-2) + q(-4));
  EXPECT_TRUE(qbinomial(3, 4, 1).is_zero());
  EXPECT_TRUE(qbinomial(3, -1, 1).is_zero());
  EXPECT_TRUE(qbinomial(-1, 0, 1).is_zero());
}

TEST(QBinomial, MatchesSubsetEnumeration) {
  for (int m = 0; m <= 10; ++m)
    for (int r = 0; r <= m; ++r) {
      const QLaurent brute = gaussian_by_subsets(m, r);
      EXPECT_EQ(qbinomial(m, r, 1), brute) << m << " " << r;
      EXPECT_EQ(qbinomial(m, r, -7), brute.substitute_power(-7)) << m << " " << r;
    }
}

TEST(QBinomial, PascalIdentities) {
  for (Exp base : {Exp{1}, Exp{-1}, Exp{-7}}) {
    for (long m = 1; m <= 12; ++m)
      for (long r = 0; r <= m; ++r) {
        const QLaurent top = qbinomial(m, r, base);
        EXPECT_EQ(top, q(r * base) * qbinomial(m - 1, r, base) + qbinomial(m - 1, r - 1, base));
        EXPECT_EQ(top, qbinomial(m - 1, r, base) + q((m - r) * base) * qbinomial(m - 1, r - 1, base));
      }
  }
}

TEST(QBinomial, QBinomialTheorem) {
  for (int n = 0; n <= 10; ++n)
    for (Exp e = -20; e <= 20; e += 3)
      for (long long sign : {1LL, -1LL})
        for (std::size_t dd : {std::size_t{0}, std::size_t{1}}) {
          const QLaurent t = q(e, dd, sign);
          QLaurent lhs = QLaurent::one();
          for (int k = 0; k < n; ++k) lhs *= QLaurent::one() + q(k) * t;
          QLaurent rhs;
          QLaurent tk = QLaurent::one();
          for (int k = 0; k <= n; ++k) {
            rhs += q(k * (k - 1) / 2) * qbinomial(n, k, 1) * tk;
            tk *= t;
          }
          EXPECT_EQ(lhs, rhs) << "n=" << n << " e=" << e;
        }
}

TEST(QBinomial, ProductSwapIdentity) {
  const Exp base = -7;
  for (long k = 0; k <= 8; ++k)
    for (long j = 0; j <= 8; ++j)
      for (long m = 0; m <= 8; ++m) {
        const QLaurent lhs = qbinomial(m - 1, k, base) * qbinomial(j + m - k - 1, m - 1, base);
        const QLaurent rhs = qbinomial(j, k, base) * qbinomial(j + m - k - 1, m - k - 1, base);
        EXPECT_EQ(lhs, rhs) << k << " " << j << " " << m;
      }
}

// Brute-force partition counts for the Pochhammer examples.
std::vector<std::vector<long>> partitions_by_parts(int n_max, const std::function<bool(int)>& allowed,
                                                   bool distinct) {
  std::vector<std::vector<long>> count(static_cast<std::size_t>(n_max) + 1,
                                       std::vector<long>(static_cast<std::size_t>(n_max) + 1, 0));
  std::function<void(int, int, int)> rec = [&](int sum, int max_part, int parts) {
    count[static_cast<std::size_t>(sum)][static_cast<std::size_t>(parts)]++;
    for (int p = 1; p <= max_part && sum + p <= n_max; ++p)
      if (allowed(p)) rec(sum + p, distinct ? p - 1 : p, parts + 1);
  };
  rec(0, n_max, 0);
  return count;
}

TEST(Pochhammer, DistinctPartsAndEvenParts) {
  const QLaurent distinct = pochhammer_expand(-1, 0, 1, 1, std::nullopt, 5);
  const auto brute = partitions_by_parts(5, [](int) { return true; }, true);
  for (int n = 0; n <= 5; ++n) {
    long total = 0;
    for (long c : brute[static_cast<std::size_t>(n)]) total += c;
    EXPECT_EQ(distinct.coefficient(n), DPoly(total)) << n;
  }
  EXPECT_EQ(distinct.trunc(), 5);

  EXPECT_EQ(pochhammer_expand(1, 1, 1, 1, 1, 10), q(0, 0, 1, 10) - q(1, 1, 1, 10));

  const QLaurent even = QLaurent::one(6).divided_by(pochhammer_expand(1, 1, 2, 2, std::nullopt, 6));
  const auto even_brute = partitions_by_parts(6, [](int p) { return p % 2 == 0; }, false);
  std::vector<BigInt> by_d;
  for (long c : even_brute[6]) by_d.emplace_back(c);
  EXPECT_EQ(even.coefficient(6), DPoly(by_d));
  EXPECT_EQ(even.coefficient(6), DPoly::monomial(1) + DPoly::monomial(2) + DPoly::monomial(3));
}

TEST(Pochhammer, InfiniteNeedsPositiveOffset) {
  EXPECT_THROW((void)pochhammer_expand(1, 0, 0, 1, std::nullopt, 5), NonConvergent);
  EXPECT_NO_THROW((void)pochhammer_expand(1, 0, -3, 1, 6, 5));
}

TEST(ProductF, WorkedExampleAndConstantTerm) {
  const auto sys = build_system({1, 2, 4}, 7);
  const QLaurent f = product_F(sys, 8);
  EXPECT_EQ(f.coefficient(8), DPoly::monomial(0) + DPoly::monomial(1, 2) + DPoly::monomial(2));
  EXPECT_EQ(f.coefficient(0), DPoly(1));
  EXPECT_TRUE(f.coefficient(1).is_zero());
}

TEST(ProductF, DZeroIsDistinctPartProduct) {
  for (auto [n, a] : std::vector<std::pair<Exp, std::vector<Exp>>>{{3, {1, 2}}, {9, {1, 3, 5}}}) {
    const auto sys = build_system(a, n);
    QLaurent distinct = QLaurent::one(30);
    for (int j = 1; j <= sys.r(); ++j) distinct *= pochhammer_expand(-1, 0, n - sys.a(j), n, std::nullopt, 30);
    EXPECT_EQ(product_F(sys, 30).at_d_zero(), distinct);
  }
}

TEST(XSeries, SubstituteX) {
  const Exp qt = 40;
  XSeries f(3);
  f[0] = QLaurent::one(qt);
  f[1] = QLaurent::one(qt);
  const XSeries g = substitute_x(f, 1, 3);
  EXPECT_EQ(g[0], QLaurent::one(qt));
  EXPECT_TRUE(g[1].agrees_with(q(3), qt));
  EXPECT_TRUE(g[2].is_zero());

  XSeries h(3);
  h[2] = q(0, 1, 1, qt);
  const XSeries s = substitute_x(h, 2, 7);
  EXPECT_TRUE(s[2].agrees_with(q(28, 1), qt));
}

TEST(XSeries, DivisionAndMismatch) {
  const Exp qt = 20;
  XSeries one_plus(4);
  one_plus[0] = QLaurent::one();
  one_plus[1] = q(2, 0, 1, qt);
  XSeries f(4);
  f[0] = QLaurent::one(qt);
  f[2] = q(1, 1, 3, qt);
  const XSeries quotient = f.divided_by(one_plus);
  const XSeries back = quotient * one_plus;
  for (std::size_t j = 0; j <= 4; ++j) EXPECT_TRUE(back[j].agrees_with(f[j], qt));
  EXPECT_THROW((void)(f + XSeries(3)), TruncationMismatch);
}

}  // namespace
}  // namespace opart
