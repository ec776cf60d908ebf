#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "alpha_system.hpp"
#include "enumeration.hpp"
#include "errors.hpp"
#include "qlaurent.hpp"
#include "qseries.hpp"

namespace opart {

namespace detail {

inline QLaurent signed_copy(const QLaurent& s, long long sign) { return sign >= 0 ? s : -s; }
inline long long parity_sign(long long n) { return (n % 2 == 0) ? 1 : -1; }

/// 1 - c d^e_d q^e_q
inline QLaurent one_minus(Exp e_q, std::size_t e_d = 0, long long c = 1) {
  return QLaurent::one() - QLaurent::monomial(e_q, e_d, c);
}

}  // namespace detail

/// g_m from a prepared counter: enumeration for m >= 1, (-d)^k for m <= 0.
inline QLaurent g_series(const GSideCounter& counter, std::int64_t m) { return counter.g(m); }

inline QLaurent g_series(const AlphaSystem& sys, std::int64_t m, Exp trunc) {
  if (trunc < 0) throw InvalidInput("trunc must be nonnegative");
  return GSideCounter(sys, trunc).g(m);
}

/// g_{jN-alpha(m)} - g_{jN-alpha(m+1)} - q^{jN-alpha(m)} (g_{jN-wN-v} + d g_{jN-(w-1)N-v}).
inline QLaurent verify_lemma2(const GSideCounter& c, std::int64_t j, std::size_t m) {
  const auto& sys = c.system();
  if (m < 1 || m > sys.num_sums()) throw InvalidInput("lemma 2 index m out of range");
  if (j < 1) throw InvalidInput("lemma 2 needs j >= 1");
  const Exp n = sys.modulus();
  const Exp al = sys.alpha(m);
  const Exp w = sys.w(al);
  const Exp v = sys.v(al);
  QLaurent r = c.g(j * n - al) - c.g(j * n - sys.alpha(m + 1));
  r -= c.g(j * n - w * n - v).shifted(j * n - al);
  r -= c.g(j * n - (w - 1) * n - v).scale_by_monomial(j * n - al, 1, 1);
  return r;
}

inline QLaurent verify_lemma2(const AlphaSystem& sys, std::int64_t j, std::size_t m, Exp trunc) {
  return verify_lemma2(GSideCounter(sys, trunc), j, m);
}

/// Residuals of (3.5) and, for k <= r, of (3.7) with its factor (1 - d q^{jN-a(k)}).
struct Eq357Residual {
  QLaurent eq35;
  std::optional<QLaurent> eq37;

  bool zero() const { return eq35.is_zero() && (!eq37 || eq37->is_zero()); }
};

inline Eq357Residual verify_eq_357(const GSideCounter& c, std::int64_t j, int k) {
  const auto& sys = c.system();
  if (k < 1 || k > sys.r() + 1) throw InvalidInput("eq 3.5/3.7 index k must lie in [1, r+1]");
  if (j < 1) throw InvalidInput("eq 3.5/3.7 needs j >= 1");
  const Exp n = sys.modulus();
  Eq357Residual out;
  out.eq35 = c.g(j * n - sys.a(1)) - c.g(j * n - sys.a(k));
  for (const auto& s : sys.sums()) {
    if (s.value >= sys.a(k)) break;
    out.eq35 -= c.g(j * n - s.weight * n - s.smallest).shifted(j * n - s.value);
    out.eq35 -= c.g(j * n - (s.weight - 1) * n - s.smallest).scale_by_monomial(j * n - s.value, 1, 1);
  }
  if (k <= sys.r()) {
    const Exp ak = sys.a(k);
    QLaurent r = detail::one_minus(j * n - ak, 1) * c.g(j * n - ak);
    r -= c.g(j * n - sys.a(k + 1));
    r -= c.g((j - 1) * n - sys.a(1)).shifted(n - ak);
    r += (detail::one_minus((j - 1) * n) * c.g((j - 1) * n - ak)).shifted(n - ak);
    out.eq37 = std::move(r);
  }
  return out;
}

inline Eq357Residual verify_eq_357(const AlphaSystem& sys, std::int64_t j, int k, Exp trunc) {
  return verify_eq_357(GSideCounter(sys, trunc), j, k);
}

/// prod_{i=1}^{k-1} (1 - d q^{lN - a(i)}): the multiplier of g_{lN-a(1)} in the key lemma at level k.
inline QLaurent key_lemma_lhs(const AlphaSystem& sys, int k, Exp ell) {
  QLaurent p = QLaurent::one();
  for (int i = 1; i <= k - 1; ++i) p *= detail::one_minus(ell * sys.modulus() - sys.a(i), 1);
  return p;
}

/// Multiplier of g_{(l-j)N-a(1)} in the key lemma at level k, 1 <= j <= k-1:
///   sum_m d^m sum_{alpha < a(k), w = j+m} q^{lN-alpha}
///     ((-1)^{m-1} q^{l(m-1)N} [j+m-1, m-1] + (-1)^m q^{lmN} [j+m, m])  (base q^{-N})
///   times prod_{h=1}^{j-1} (1 - q^{(l-h)N}).
inline QLaurent key_lemma_coefficient(const AlphaSystem& sys, int k, Exp ell, int j) {
  if (j < 1 || j > k - 1) return {};
  const Exp n = sys.modulus();
  QLaurent prod = QLaurent::one();
  for (int h = 1; h <= j - 1; ++h) prod *= detail::one_minus((ell - h) * n);
  if (prod.is_zero()) return {};
  QLaurent inner;
  for (int m = 0; m <= k - j - 1; ++m) {
    const QLaurent s = alpha_weight_sum(sys, k, j + m);
    if (s.is_zero()) continue;
    QLaurent bin = detail::signed_copy(qbinomial(j + m - 1, m - 1, -n).shifted(ell * (m - 1) * n),
                                       detail::parity_sign(m - 1));
    bin += detail::signed_copy(qbinomial(j + m, m, -n).shifted(ell * m * n), detail::parity_sign(m));
    inner += (s * bin).scale_by_monomial(ell * n, static_cast<std::size_t>(m), 1);
  }
  return inner * prod;
}

/// One instance of the main recurrence: lhs u_l = sum_j rhs[j-1] u_{l-j}.
struct RecRow {
  Exp ell = 0;
  QLaurent lhs;
  std::vector<QLaurent> rhs;
};

inline RecRow build_rec_row(const AlphaSystem& sys, Exp ell) {
  if (ell < 1) throw InvalidInput("recurrence rows start at l = 1");
  const int r = sys.r();
  RecRow row;
  row.ell = ell;
  row.lhs = key_lemma_lhs(sys, r + 1, ell);
  row.rhs.reserve(static_cast<std::size_t>(r));
  for (int j = 1; j <= r; ++j) row.rhs.push_back(key_lemma_coefficient(sys, r + 1, ell, j));
  row.rhs[0] += QLaurent::one();
  return row;
}

/// Same row with every coefficient cut at q^trunc.
inline RecRow build_rec_row(const AlphaSystem& sys, Exp ell, Exp trunc) {
  RecRow row = build_rec_row(sys, ell);
  row.lhs = row.lhs.truncated(trunc);
  for (auto& c : row.rhs) c = c.truncated(trunc);
  return row;
}

/// (-d)^k for u_{-k}.
inline QLaurent initial_u(Exp k) {
  return QLaurent::monomial(0, static_cast<std::size_t>(k), detail::parity_sign(k));
}

/// lhs u_l - sum_j rhs[j-1] u_{l-j}; u(i) supplies u_i for any i >= l - r.
template <typename U>
QLaurent rec_row_residual(const RecRow& row, U&& u) {
  QLaurent r = row.lhs * u(row.ell);
  for (std::size_t j = 1; j <= row.rhs.size(); ++j) {
    if (row.rhs[j - 1].is_zero()) continue;
    r -= row.rhs[j - 1] * u(row.ell - static_cast<Exp>(j));
  }
  return r;
}

/// u_0 ... u_ell_max, each known up to q^trunc (u_0 = 1 exactly).
inline std::vector<QLaurent> run_recurrence(const AlphaSystem& sys, Exp ell_max, Exp trunc) {
  if (trunc < 0) throw InvalidInput("trunc must be nonnegative");
  if (ell_max < 0) throw InvalidInput("ell_max must be nonnegative");
  std::vector<QLaurent> u{QLaurent::one()};
  const auto at = [&](Exp i) { return i >= 0 ? u[static_cast<std::size_t>(i)] : initial_u(-i); };
  for (Exp ell = 1; ell <= ell_max; ++ell) {
    const RecRow row = build_rec_row(sys, ell);
    if (!row.lhs.coefficient(0).is_constant(1))
      throw NonUnitLeadingTerm("recurrence multiplier at l = " + std::to_string(ell) + " has constant term " +
                               row.lhs.coefficient(0).to_string());
    QLaurent acc;
    for (std::size_t j = 1; j <= row.rhs.size(); ++j) {
      if (row.rhs[j - 1].is_zero()) continue;
      acc += row.rhs[j - 1] * at(ell - static_cast<Exp>(j));
    }
    if (acc.is_exact()) acc = acc.truncated(trunc);
    u.push_back(acc.divided_by(row.lhs).truncated(trunc));
  }
  return u;
}

/// Key lemma (eq. 8) residual at level k with every g supplied by the counter.
inline QLaurent verify_key_lemma(const GSideCounter& c, int k, Exp ell) {
  const auto& sys = c.system();
  if (k < 1 || k > sys.r() + 1) throw InvalidInput("key lemma level k must lie in [1, r+1]");
  if (ell < 1) throw InvalidInput("key lemma needs l >= 1");
  const Exp n = sys.modulus();
  QLaurent r = key_lemma_lhs(sys, k, ell) * c.g(ell * n - sys.a(1)) - c.g(ell * n - sys.a(k));
  for (int j = 1; j <= k - 1; ++j) {
    const QLaurent coef = key_lemma_coefficient(sys, k, ell, j);
    if (!coef.is_zero()) r -= coef * c.g((ell - j) * n - sys.a(1));
  }
  return r;
}

inline QLaurent verify_key_lemma(const AlphaSystem& sys, int k, Exp ell, Exp trunc) {
  return verify_key_lemma(GSideCounter(sys, trunc), k, ell);
}

/// The series u_l stabilises to, up to q^trunc.
inline QLaurent limit_u(const AlphaSystem& sys, Exp trunc) {
  if (trunc < 0) throw InvalidInput("trunc must be nonnegative");
  const Exp n = sys.modulus();
  Exp last = 1;
  while ((last - 1) * n - sys.a(1) < trunc) ++last;
  const auto u = run_recurrence(sys, last, trunc);
  const QLaurent& prev = u[static_cast<std::size_t>(last - 1)];
  const QLaurent& cur = u[static_cast<std::size_t>(last)];
  const QLaurent diff = prev.truncated(trunc) - cur.truncated(trunc);
  if (!diff.is_zero())
    throw NotStabilized("u_" + std::to_string(last - 1) + " and u_" + std::to_string(last) +
                        " differ at q^" + std::to_string(*diff.min_exp()));
  QLaurent out = cur.truncated(trunc);
  if (out.min_exp() && *out.min_exp() < 0) throw NotStabilized("limit has negative q-exponents");
  return out;
}

// Coefficient families of the transformation chain. S(j) sums q^{-alpha} over
// alpha < a(r) with w = j; S'(j) over all of A'.

/// c_{k,j} = q^{-N k(k+1)/2 - k a(r)} [j-1, k]_{q^{-N}} d^k
inline QLaurent coef_c(const AlphaSystem& sys, long k, long j) {
  const Exp n = sys.modulus();
  if (k < 0) return {};
  return qbinomial(j - 1, k, -n).scale_by_monomial(-n * k * (k + 1) / 2 - k * sys.a(sys.r()),
                                                    static_cast<std::size_t>(k), 1);
}

namespace detail {
inline QLaurent weighted_band(const AlphaSystem& sys, int bound_index, long m, long j) {
  if (m < 1) return {};
  QLaurent s = alpha_weight_sum(sys, bound_index, static_cast<int>(j + m - 1))
                   .scale_by_monomial(0, static_cast<std::size_t>(m - 1), 1);
  s += alpha_weight_sum(sys, bound_index, static_cast<int>(j + m)).scale_by_monomial(0, static_cast<std::size_t>(m), 1);
  return s * qbinomial(j + m - 1, m - 1, -sys.modulus());
}
}  // namespace detail

/// b_{m,j} = (d^{m-1} S'(j+m-1) + d^m S'(j+m)) [j+m-1, m-1]_{q^{-N}}
inline QLaurent coef_b(const AlphaSystem& sys, long m, long j) {
  return detail::weighted_band(sys, sys.r() + 1, m, j);
}

/// e_{m,j} = (d^{m-1} S(j+m-1) + d^m S(j+m)) [j+m-1, m-1]_{q^{-N}}
inline QLaurent coef_e(const AlphaSystem& sys, long m, long j) {
  if (j < 0) return {};
  return detail::weighted_band(sys, sys.r(), m, j);
}

/// f_{m,k} = q^{-N k(k+1)/2 - k a(r)} [m-1, k]_{q^{-N}}
inline QLaurent coef_f(const AlphaSystem& sys, long m, long k) {
  const Exp n = sys.modulus();
  if (k < 0) return {};
  return qbinomial(m - 1, k, -n).shifted(-n * k * (k + 1) / 2 - k * sys.a(sys.r()));
}

/// T_{m,j} = sum_k c_{k,j} b_{m-k,j}
inline QLaurent coef_T(const AlphaSystem& sys, long m, long j) {
  QLaurent t;
  for (long k = 0; k <= std::min(j - 1, m - 1); ++k) t += coef_c(sys, k, j) * coef_b(sys, m - k, j);
  return t;
}

/// T'_{m,j} = sum_k f_{m,k} e_{m,j-k} + q^{-a(r)} sum_k f_{m,k} e_{m,j-k-1}
inline QLaurent coef_T_prime(const AlphaSystem& sys, long m, long j) {
  QLaurent t;
  for (long k = 0; k <= std::min(m - 1, j); ++k) t += coef_f(sys, m, k) * coef_e(sys, m, j - k);
  QLaurent tail;
  for (long k = 0; k <= std::min(m - 1, j - 1); ++k) tail += coef_f(sys, m, k) * coef_e(sys, m, j - k - 1);
  return t + tail.shifted(-sys.a(sys.r()));
}

inline bool verify_Tmj(const AlphaSystem& sys, long m, long j) {
  if (m < 1 || j < 1 || m > sys.r() || j > sys.r()) throw InvalidInput("T_{m,j} needs 1 <= m, j <= r");
  return coef_T(sys, m, j) == coef_T_prime(sys, m, j);
}

}  // namespace opart
