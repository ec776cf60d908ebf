#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "dpoly.hpp"
#include "qlaurent.hpp"

namespace opart {

/// Exact counts indexed by (k, n), 0 <= n <= n_max. Row n is stored as a DPoly
/// whose d^k coefficient is the count with k non-overlined parts.
class CountTable {
 public:
  explicit CountTable(std::int64_t n_max = 0) : rows_(static_cast<std::size_t>(n_max) + 1) {}

  std::int64_t n_max() const noexcept { return static_cast<std::int64_t>(rows_.size()) - 1; }

  const DPoly& row(std::int64_t n) const { return rows_.at(static_cast<std::size_t>(n)); }
  DPoly& row(std::int64_t n) { return rows_.at(static_cast<std::size_t>(n)); }

  BigInt entry(std::size_t k, std::int64_t n) const { return row(n)[k]; }

  BigInt total(std::int64_t n) const {
    BigInt s = 0;
    for (const auto& c : row(n).coeffs()) s += c;
    return s;
  }

  /// Largest k with a nonzero entry anywhere, or 0.
  std::size_t max_k() const noexcept {
    std::size_t k = 0;
    for (const auto& r : rows_)
      if (r.degree() > static_cast<long>(k)) k = static_cast<std::size_t>(r.degree());
    return k;
  }

  /// Generating function sum entry(k, n) d^k q^n, known up to q^n_max.
  QLaurent as_series() const {
    QLaurent s = QLaurent::zero(n_max());
    for (std::int64_t n = 0; n <= n_max(); ++n) s += QLaurent::monomial(n, row(n), n_max());
    return s;
  }

  static CountTable from_series(const QLaurent& s, std::int64_t n_max) {
    CountTable t(n_max);
    for (std::int64_t n = 0; n <= n_max; ++n) t.row(n) = s.coefficient(n);
    return t;
  }

  /// First (k, n) at which the tables differ, scanning n then k.
  std::optional<std::pair<std::size_t, std::int64_t>> first_difference(const CountTable& o) const {
    const std::int64_t upto = std::min(n_max(), o.n_max());
    for (std::int64_t n = 0; n <= upto; ++n) {
      if (row(n) == o.row(n)) continue;
      const std::size_t kmax = static_cast<std::size_t>(std::max(row(n).degree(), o.row(n).degree()));
      for (std::size_t k = 0; k <= kmax; ++k)
        if (row(n)[k] != o.row(n)[k]) return std::make_pair(k, n);
    }
    return std::nullopt;
  }

  friend bool operator==(const CountTable& a, const CountTable& b) { return a.rows_ == b.rows_; }

 private:
  std::vector<DPoly> rows_;
};

}  // namespace opart
