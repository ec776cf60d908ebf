#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "alpha_system.hpp"
#include "errors.hpp"
#include "qlaurent.hpp"

namespace opart {

/// Gaussian binomial [m r] evaluated at q^base_exp, as an exact Laurent polynomial.
/// Zero unless 0 <= r <= m.
inline QLaurent qbinomial(long m, long r, Exp base_exp) {
  if (base_exp == 0) throw InvalidInput("q-binomial base exponent must be nonzero");
  if (r < 0 || m < 0 || r > m) return {};
  QLaurent num = QLaurent::one();
  QLaurent den = QLaurent::one();
  for (long i = 0; i < r; ++i) {
    num *= QLaurent::one() - QLaurent::monomial(m - i);
    den *= QLaurent::one() - QLaurent::monomial(i + 1);
  }
  QLaurent in_q = num.exact_quotient(den);
  return base_exp == 1 ? in_q : in_q.substitute_power(base_exp);
}

/// prod_j (1 - t q^{offset + j*step}) with t = t_sign * d^{t_d_degree}, j = 0, 1, ...
/// num_factors == nullopt means the infinite product, which needs offset >= 1.
/// Known up to q^trunc.
inline QLaurent pochhammer_expand(int t_sign, int t_d_degree, Exp offset, Exp step,
                                  std::optional<std::size_t> num_factors, Exp trunc) {
  if (t_sign != 1 && t_sign != -1) throw InvalidInput("t_sign must be +1 or -1");
  if (t_d_degree != 0 && t_d_degree != 1) throw InvalidInput("t_d_degree must be 0 or 1");
  if (step <= 0) throw InvalidInput("step exponent must be positive");
  const auto factor = [&](Exp e) {
    return QLaurent::one() -
           QLaurent::monomial(e, DPoly::monomial(static_cast<std::size_t>(t_d_degree), BigInt(t_sign)));
  };
  if (!num_factors) {
    if (offset <= 0)
      throw NonConvergent("infinite q-Pochhammer product with offset exponent " + std::to_string(offset) +
                          " <= 0 does not converge");
    QLaurent p = QLaurent::one(trunc);
    for (Exp e = offset; e <= trunc; e += step) p *= factor(e);
    return p;
  }
  QLaurent p = QLaurent::one();
  for (std::size_t j = 0; j < *num_factors; ++j) {
    const Exp e = offset + static_cast<Exp>(j) * step;
    if (p.min_exp() && e + *p.min_exp() > trunc && e > 0) break;
    p *= factor(e);
  }
  return p.is_exact() ? p.truncated(trunc) : p;
}

/// Sum of q^{-alpha} over alpha in A' with alpha < a(bound_index) and w(alpha) = weight.
/// weight 0 gives the constant 1; bound_index r+1 covers all of A'.
inline QLaurent alpha_weight_sum(const AlphaSystem& sys, int bound_index, int weight) {
  if (weight < 0) return {};
  if (weight == 0) return QLaurent::one();
  const Exp bound = sys.a(bound_index);
  QLaurent s;
  for (const auto& a : sys.sums())
    if (a.value < bound && a.weight == weight) s += QLaurent::monomial(-a.value);
  return s;
}

/// prod_{j=1}^r (-q^{N-a(j)}; q^N)_inf / (d q^{N-a(j)}; q^N)_inf up to q^trunc:
/// the coefficient of q^n d^k counts overpartitions of n into parts congruent to
/// some -a(j) mod N with k non-overlined parts.
inline QLaurent product_F(const AlphaSystem& sys, Exp trunc) {
  const Exp n = sys.modulus();
  QLaurent num = QLaurent::one(trunc);
  QLaurent den = QLaurent::one(trunc);
  for (int j = 1; j <= sys.r(); ++j) {
    num *= pochhammer_expand(-1, 0, n - sys.a(j), n, std::nullopt, trunc);
    den *= pochhammer_expand(1, 1, n - sys.a(j), n, std::nullopt, trunc);
  }
  return num.divided_by(den);
}

}  // namespace opart
