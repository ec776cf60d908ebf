#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "alpha_system.hpp"
#include "count_table.hpp"
#include "overpartition.hpp"

namespace opart {

enum class LargestFlag { overlined, non_overlined };

namespace detail {

/// Multiplies the count table by the factor contributed by one allowed part size:
/// each size may appear c >= 0 times, and when c >= 1 its first copy may be overlined.
inline void admit_part_size(std::vector<DPoly>& table, std::int64_t size) {
  const auto n_max = static_cast<std::int64_t>(table.size()) - 1;
  for (std::int64_t n = n_max; n >= size; --n) {
    DPoly extra;
    for (std::int64_t c = 1; c * size <= n; ++c) {
      const DPoly& rest = table[static_cast<std::size_t>(n - c * size)];
      if (rest.is_zero()) continue;
      extra += rest.shifted(static_cast<std::size_t>(c));      // all copies plain
      extra += rest.shifted(static_cast<std::size_t>(c - 1));  // first copy overlined
    }
    table[static_cast<std::size_t>(n)] += extra;
  }
}

inline CountTable knapsack_count(std::int64_t n_max, const std::vector<std::int64_t>& sizes) {
  std::vector<DPoly> table(static_cast<std::size_t>(n_max) + 1);
  table[0] = DPoly(1);
  for (auto s : sizes) admit_part_size(table, s);
  CountTable out(n_max);
  for (std::int64_t n = 0; n <= n_max; ++n) out.row(n) = table[static_cast<std::size_t>(n)];
  return out;
}

}  // namespace detail

/// Unrestricted overpartitions of n, refined by the number of non-overlined parts.
inline CountTable count_all_overpartitions(std::int64_t n_max) {
  if (n_max < 0) throw InvalidInput("n_max must be nonnegative");
  std::vector<std::int64_t> sizes;
  for (std::int64_t s = 1; s <= n_max; ++s) sizes.push_back(s);
  return detail::knapsack_count(n_max, sizes);
}

/// F(-A_N; k, n): overpartitions of n into parts congruent to some -a(i) mod N.
inline CountTable count_F(const AlphaSystem& sys, std::int64_t n_max) {
  if (n_max < 0) throw InvalidInput("n_max must be nonnegative");
  std::vector<std::int64_t> sizes;
  for (std::int64_t s = 1; s <= n_max; ++s) {
    const auto g = sys.generators();
    if (std::any_of(g.begin(), g.end(), [&](std::int64_t a) { return sys.beta(-s) == sys.beta(a); }))
      sizes.push_back(s);
  }
  return detail::knapsack_count(n_max, sizes);
}

/// Bound on lambda_i - lambda_{i+1} for a G-side pair: driven by the larger part's
/// residue alpha = beta_N(-larger) and the smaller part's overline flag.
inline std::int64_t g_pair_gap(const AlphaSystem& sys, std::int64_t larger, bool smaller_overlined) {
  const std::int64_t alpha = sys.beta(-larger);
  const auto& info = sys.sum_info(alpha);
  return sys.modulus() * (info.weight - 1 + (smaller_overlined ? 1 : 0)) + info.smallest - alpha;
}

inline bool g_part_allowed(const AlphaSystem& sys, std::int64_t part) { return sys.is_sum(sys.beta(-part)); }

inline bool g_smallest_allowed(const AlphaSystem& sys, std::int64_t part) {
  return g_part_allowed(sys, part) && part >= sys.modulus() * (sys.w(sys.beta(-part)) - 1);
}

/// Whether op is counted by G(-A'_N; k, n).
inline bool check_G_conditions(const AlphaSystem& sys, const Overpartition& op) {
  op.validate();
  const auto& parts = op.parts();
  if (parts.empty()) return true;
  for (const auto& p : parts)
    if (!g_part_allowed(sys, p.size)) return false;
  if (!g_smallest_allowed(sys, parts.back().size)) return false;
  for (std::size_t i = 0; i + 1 < parts.size(); ++i)
    if (parts[i].size - parts[i + 1].size < g_pair_gap(sys, parts[i].size, parts[i + 1].overlined)) return false;
  return true;
}

/// Counts of G-side overpartitions by largest part, sum and non-overlined count.
///
/// tails(p, flag)[s] is the generating polynomial in d of valid overpartitions of s
/// whose largest part is p with the given overline flag. Built bottom-up over p, so
/// every query (pi_m, phi_m, psi_m, g_m) is a prefix sum.
class GSideCounter {
 public:
  GSideCounter(const AlphaSystem& sys, std::int64_t n_max) : sys_(sys), n_max_(n_max) {
    if (n_max < 0) throw InvalidInput("n_max must be nonnegative");
    const auto n1 = static_cast<std::size_t>(n_max) + 1;
    for (auto& t : tails_) t.assign(n1, std::vector<DPoly>(n1));
    for (std::int64_t p = 1; p <= n_max; ++p) {
      if (!g_part_allowed(sys, p)) continue;
      const bool alone = g_smallest_allowed(sys, p);
      for (int fl = 0; fl < 2; ++fl) {
        const bool over = fl == 1;
        auto& row = tails_[fl][static_cast<std::size_t>(p)];
        if (alone) row[static_cast<std::size_t>(p)] = DPoly::monomial(over ? 0 : 1);
        // Ascending s: equal-size continuations read entries of this row below s.
        for (std::int64_t s = p + 1; s <= n_max; ++s) {
          DPoly acc;
          for (int fl2 = 0; fl2 < 2; ++fl2) {
            const bool over2 = fl2 == 1;
            const std::int64_t top = std::min(p - g_pair_gap(sys, p, over2), s - p);
            for (std::int64_t p2 = 1; p2 <= top; ++p2) {
              if (p2 == p && over2) continue;
              acc += tails_[fl2][static_cast<std::size_t>(p2)][static_cast<std::size_t>(s - p)];
            }
          }
          if (!acc.is_zero()) row[static_cast<std::size_t>(s)] = over ? acc : acc.shifted(1);
        }
      }
    }
    for (int fl = 0; fl < 2; ++fl) {
      cumulative_[fl].assign(n1, std::vector<DPoly>(n1));
      for (std::size_t m = 1; m < n1; ++m)
        for (std::size_t s = 0; s < n1; ++s)
          cumulative_[fl][m][s] = cumulative_[fl][m - 1][s] + tails_[fl][m][s];
    }
  }

  const AlphaSystem& system() const noexcept { return sys_; }
  std::int64_t n_max() const noexcept { return n_max_; }

  /// Table restricted to largest part <= largest_bound and, optionally, to the
  /// overline status of the largest part. The empty overpartition is always counted.
  CountTable count(std::optional<std::int64_t> largest_bound = std::nullopt,
                   std::optional<LargestFlag> flag = std::nullopt) const {
    CountTable t(n_max_);
    t.row(0) = DPoly(1);
    const std::int64_t m = std::clamp<std::int64_t>(largest_bound.value_or(n_max_), 0, n_max_);
    for (int fl = 0; fl < 2; ++fl) {
      if (flag && (*flag == LargestFlag::overlined) != (fl == 1)) continue;
      for (std::int64_t n = 1; n <= n_max_; ++n)
        t.row(n) += cumulative_[fl][static_cast<std::size_t>(m)][static_cast<std::size_t>(n)];
    }
    return t;
  }

  /// Coefficient of q^n in g_m: psi_m(k, n) for n >= 1, the empty overpartition at
  /// n = 0, and (-d)^band for m < 0.
  DPoly psi_hat(std::int64_t m, std::int64_t n) const {
    if (n < 0) return {};
    if (m < 0) return n == 0 ? negative_convention(m) : DPoly{};
    if (n == 0) return DPoly(1);
    if (n > n_max_)
      throw InsufficientPrecision("psi requested at n = " + std::to_string(n) + " beyond n_max = " +
                                  std::to_string(n_max_));
    const auto mm = static_cast<std::size_t>(std::min(m, n_max_));
    return cumulative_[0][mm][static_cast<std::size_t>(n)] + cumulative_[1][mm][static_cast<std::size_t>(n)];
  }

  /// g_m(q, d) known up to q^n_max; exact constant (-d)^k for m <= 0.
  QLaurent g(std::int64_t m) const {
    if (m <= 0) return QLaurent::constant(negative_convention(m));
    QLaurent s = QLaurent::one(n_max_);
    const auto mm = static_cast<std::size_t>(std::min(m, n_max_));
    for (std::int64_t n = 1; n <= n_max_; ++n) {
      const auto nn = static_cast<std::size_t>(n);
      s += QLaurent::monomial(n, cumulative_[0][mm][nn] + cumulative_[1][mm][nn], n_max_);
    }
    return s;
  }

  /// (-d)^k for m = -M with kN <= M <= (k+1)N, k = min(floor(M/N), r-1).
  DPoly negative_convention(std::int64_t m) const {
    const std::int64_t big_m = -m;
    if (big_m > sys_.r() * sys_.modulus())
      throw ConventionOutOfRange("g_" + std::to_string(m) + " lies below -rN = " +
                                 std::to_string(-sys_.r() * sys_.modulus()));
    const auto k = static_cast<std::size_t>(std::min<std::int64_t>(big_m / sys_.modulus(), sys_.r() - 1));
    return DPoly::monomial(k, (k % 2 == 0) ? 1 : -1);
  }

 private:
  AlphaSystem sys_;
  std::int64_t n_max_;
  std::array<std::vector<std::vector<DPoly>>, 2> tails_;       // [flag][p][s]
  std::array<std::vector<std::vector<DPoly>>, 2> cumulative_;  // [flag][m][s], largest part <= m
};

/// G(-A'_N; k, n), optionally restricted as pi_m / phi_m / psi_m.
inline CountTable count_G(const AlphaSystem& sys, std::int64_t n_max,
                          std::optional<std::int64_t> largest_bound = std::nullopt,
                          std::optional<LargestFlag> flag = std::nullopt) {
  return GSideCounter(sys, n_max).count(largest_bound, flag);
}

/// Which part's residue drives the difference bound of the ordinary-partition count.
enum class AndrewsGapIndex {
  larger_part,   ///< beta_N(-lambda_i): agrees with the F side
  smaller_part,  ///< beta_N(-lambda_{i+1}): the printed display, kept for comparison
};

/// Ordinary partitions (k = 0 row only) into parts from -A'_N with
///   lambda_i - lambda_{i+1} >= N w(b) + v(b) - b,  b = beta_N(-lambda_i) (or -lambda_{i+1}),
/// and lambda_s >= N (w(beta_N(-lambda_s)) - 1).
inline CountTable count_G_andrews_k0(const AlphaSystem& sys, std::int64_t n_max,
                                     AndrewsGapIndex index = AndrewsGapIndex::larger_part) {
  if (n_max < 0) throw InvalidInput("n_max must be nonnegative");
  const auto n1 = static_cast<std::size_t>(n_max) + 1;
  const std::int64_t big_n = sys.modulus();
  const auto gap = [&](std::int64_t larger, std::int64_t smaller) {
    const std::int64_t b = sys.beta(-(index == AndrewsGapIndex::larger_part ? larger : smaller));
    return big_n * sys.w(b) + sys.v(b) - b;
  };
  std::vector<std::vector<BigInt>> tails(n1, std::vector<BigInt>(n1, BigInt{0}));
  CountTable out(n_max);
  out.row(0) = DPoly(1);
  for (std::int64_t p = 1; p <= n_max; ++p) {
    if (!g_part_allowed(sys, p)) continue;
    auto& row = tails[static_cast<std::size_t>(p)];
    if (g_smallest_allowed(sys, p)) row[static_cast<std::size_t>(p)] = 1;
    for (std::int64_t s = p + 1; s <= n_max; ++s) {
      for (std::int64_t p2 = 1; p2 <= std::min(p, s - p); ++p2) {
        if (!g_part_allowed(sys, p2) || p - p2 < gap(p, p2)) continue;
        row[static_cast<std::size_t>(s)] += tails[static_cast<std::size_t>(p2)][static_cast<std::size_t>(s - p)];
      }
    }
    for (std::int64_t s = p; s <= n_max; ++s) out.row(s) += DPoly(row[static_cast<std::size_t>(s)]);
  }
  return out;
}

/// Lemma-1 count identity at (j, m), with the removed-part count recorded in k:
///   psi_{jN-alpha(m)}(k,n) - psi_{jN-alpha(m+1)}(k,n)
///     = psi_{jN-w N-v}(k, n-jN+alpha(m)) + psi_{jN-(w-1)N-v}(k-1, n-jN+alpha(m)).
/// Returns the first (k, n) where it fails.
inline std::optional<std::pair<std::size_t, std::int64_t>> lemma1_mismatch(const GSideCounter& c, std::int64_t j,
                                                                          std::size_t m) {
  const auto& sys = c.system();
  const std::int64_t big_n = sys.modulus();
  const std::int64_t alpha = sys.alpha(m);
  const std::int64_t next = sys.alpha(m + 1);
  const auto& info = sys.sum_info(alpha);
  const std::int64_t part = j * big_n - alpha;
  const std::int64_t sub_over = j * big_n - info.weight * big_n - info.smallest;
  const std::int64_t sub_plain = j * big_n - (info.weight - 1) * big_n - info.smallest;
  for (std::int64_t n = 0; n <= c.n_max(); ++n) {
    const DPoly lhs = c.psi_hat(part, n) - c.psi_hat(j * big_n - next, n);
    const DPoly rhs = c.psi_hat(sub_over, n - part) + c.psi_hat(sub_plain, n - part).shifted(1);
    if (lhs == rhs) continue;
    const auto kmax = static_cast<std::size_t>(std::max(lhs.degree(), rhs.degree()));
    for (std::size_t k = 0; k <= kmax; ++k)
      if (lhs[k] != rhs[k]) return std::make_pair(k, n);
  }
  return std::nullopt;
}

}  // namespace opart
