#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "alpha_system.hpp"
#include "errors.hpp"
#include "qlaurent.hpp"
#include "qseries.hpp"
#include "recurrence.hpp"
#include "xseries.hpp"

namespace opart {

/// Intermediate sequences of the transformation chain, at the working precision.
struct ChainState {
  std::vector<QLaurent> u, beta, s, mu;
  XSeries f, G, g;
};

struct ChainStage {
  std::string name;
  /// Residual per index (x-degree for the q-difference equations, l for the recurrences),
  /// cut at the precision the stage is judged at.
  XSeries residual;
  bool residual_zero = false;
  std::optional<XSeries::Monomial> first_offending;
};

struct ChainReport {
  AlphaSystem system;
  Exp trunc = 0;
  std::size_t x_trunc = 0;
  Exp ell_max = 0;
  Exp working_trunc = 0;
  std::vector<ChainStage> stages;
  ChainState state;

  bool passed() const {
    return std::all_of(stages.begin(), stages.end(), [](const ChainStage& s) { return s.residual_zero; });
  }
  const ChainStage* first_failure() const {
    for (const auto& s : stages)
      if (!s.residual_zero) return &s;
    return nullptr;
  }
};

namespace detail {

struct ChainTables {
  std::vector<std::vector<QLaurent>> T, e, f;  // [m][j], 0 <= m, j <= r
};

inline ChainTables chain_tables(const AlphaSystem& sys) {
  const auto r = static_cast<std::size_t>(sys.r());
  ChainTables t;
  t.T.assign(r + 1, std::vector<QLaurent>(r + 1));
  t.e = t.T;
  t.f = t.T;
  for (std::size_t m = 1; m <= r; ++m)
    for (std::size_t j = 0; j <= r; ++j) {
      const auto mi = static_cast<long>(m);
      const auto ji = static_cast<long>(j);
      if (j >= 1) t.T[m][j] = coef_T(sys, mi, ji);
      t.e[m][j] = coef_e(sys, mi, ji);
      t.f[m][j] = coef_f(sys, mi, ji);
    }
  return t;
}

/// 1 + sum_{m=1}^r (-1)^m e_{m,0} q^{m l N}
inline QLaurent chain_lhs_coef(const AlphaSystem& sys, const ChainTables& t, Exp ell) {
  QLaurent c = QLaurent::one();
  for (int m = 1; m <= sys.r(); ++m)
    c += signed_copy(t.e[static_cast<std::size_t>(m)][0].shifted(m * ell * sys.modulus()), parity_sign(m));
  return c;
}

/// (1 - x) F - sum_m (-1)^{m+1} C_m(x) F(x q^{mN})
inline XSeries q_difference_residual(const XSeries& F, const std::vector<XSeries>& cm, Exp modulus) {
  XSeries res = F - F.shifted_x(1);
  for (std::size_t m = 1; m < cm.size(); ++m) {
    const XSeries term = cm[m] * substitute_x(F, static_cast<Exp>(m), modulus);
    if (m % 2 == 1)
      res -= term;
    else
      res += term;
  }
  return res;
}

struct RawStage {
  std::string name;
  XSeries residual;
  Exp judged_upto;
};

struct RawChain {
  std::vector<RawStage> stages;
  ChainState state;
};

inline XSeries stage_series(std::vector<QLaurent> coeffs) {
  if (coeffs.empty()) coeffs.emplace_back();
  return XSeries::from_coeffs(std::move(coeffs));
}

inline RawChain run_chain(const AlphaSystem& sys, Exp ell_max, std::size_t x_trunc, Exp trunc, Exp work,
                          const std::vector<QLaurent>* u_given = nullptr) {
  const int r = sys.r();
  const Exp n = sys.modulus();
  const Exp ar = sys.a(r);
  const auto xt = x_trunc;
  const ChainTables t = chain_tables(sys);
  RawChain out;
  ChainState& st = out.state;

  st.u = u_given ? *u_given : run_recurrence(sys, ell_max, work);

  // beta_l = u_l prod_{i<=l} (1 - d q^{iN-a(r)}) / (1 - q^{iN})
  st.beta.push_back(QLaurent::one());
  QLaurent num = QLaurent::one();
  QLaurent den = QLaurent::one();
  for (Exp ell = 1; ell <= ell_max; ++ell) {
    num *= one_minus(ell * n - ar, 1);
    den *= one_minus(ell * n);
    st.beta.push_back((st.u[static_cast<std::size_t>(ell)] * num).divided_by(den));
  }
  const auto beta_at = [&](Exp i) { return i >= 0 ? st.beta[static_cast<std::size_t>(i)] : QLaurent{}; };

  {
    std::vector<QLaurent> res{QLaurent{}};
    for (Exp ell = 1; ell <= ell_max; ++ell) {
      QLaurent x = chain_lhs_coef(sys, t, ell) * beta_at(ell) - beta_at(ell - 1);
      for (int j = 1; j <= r; ++j) {
        if (ell - j < 0) continue;
        for (int h = 1; h <= r; ++h) {
          const auto& T = t.T[static_cast<std::size_t>(h)][static_cast<std::size_t>(j)];
          if (T.is_zero()) continue;
          x -= signed_copy(T.shifted(h * ell * n), parity_sign(h + 1)) * beta_at(ell - j);
        }
      }
      res.push_back(std::move(x));
    }
    out.stages.push_back({"rec_prime", stage_series(std::move(res)), trunc});
  }

  std::vector<QLaurent> fc;
  for (std::size_t i = 0; i <= xt; ++i) fc.push_back(beta_at(static_cast<Exp>(i)));
  st.f = XSeries::from_coeffs(fc);

  {
    std::vector<XSeries> cm(static_cast<std::size_t>(r) + 1, XSeries(xt));
    for (int m = 1; m <= r; ++m) {
      auto& c = cm[static_cast<std::size_t>(m)];
      c[0] = t.e[static_cast<std::size_t>(m)][0];
      for (int j = 1; j <= r && static_cast<std::size_t>(j) <= xt; ++j)
        c[static_cast<std::size_t>(j)] =
            t.T[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)].shifted(m * j * n);
    }
    out.stages.push_back({"eq", q_difference_residual(st.f, cm, n), trunc});
  }

  {
    std::vector<XSeries> cm(static_cast<std::size_t>(r) + 1, XSeries(xt));
    for (int m = 1; m <= r; ++m) {
      const auto mu = static_cast<std::size_t>(m);
      auto& c = cm[mu];
      for (int nu = 0; nu <= r && static_cast<std::size_t>(nu) <= xt; ++nu) {
        QLaurent coef;
        if (nu <= r - 1)
          for (int k = 0; k <= std::min(m - 1, nu); ++k)
            coef += t.f[mu][static_cast<std::size_t>(k)] * t.e[mu][static_cast<std::size_t>(nu - k)];
        QLaurent tail;
        for (int k = 0; k <= std::min(m - 1, nu - 1); ++k)
          tail += t.f[mu][static_cast<std::size_t>(k)] * t.e[mu][static_cast<std::size_t>(nu - k - 1)];
        coef += tail.shifted(-ar);
        c[static_cast<std::size_t>(nu)] = coef.shifted(nu * m * n);
      }
    }
    out.stages.push_back({"eq_prime", q_difference_residual(st.f, cm, n), trunc});
  }

  // prod_{k>=1} (1 + x q^{kN-a(r)}), cut where the factors no longer reach q^work.
  XSeries p = XSeries::monomial(xt, 0, QLaurent::one());
  for (Exp k = 1; k * n - ar <= work; ++k) {
    XSeries factor = XSeries::monomial(xt, 0, QLaurent::one());
    if (xt >= 1) factor[1] = QLaurent::monomial(k * n - ar);
    p = p * factor;
  }
  for (std::size_t j = 1; j <= xt; ++j) p[j] = p[j].truncated(work);
  st.G = st.f.divided_by(p);
  st.g = st.G * p;

  {
    std::vector<XSeries> cm(static_cast<std::size_t>(r) + 1, XSeries(xt));
    for (int m = 1; m <= r; ++m)
      for (int j = 0; j <= r - 1 && static_cast<std::size_t>(j) <= xt; ++j)
        cm[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)] =
            t.e[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)].shifted(j * m * n);
    out.stages.push_back({"eq_double_prime", q_difference_residual(st.G, cm, n), trunc});
  }

  st.s = st.G.coeffs();
  const auto s_at = [&](Exp i) { return i >= 0 ? st.s[static_cast<std::size_t>(i)] : QLaurent{}; };
  {
    std::vector<QLaurent> res{QLaurent{}};
    for (Exp ell = 1; ell <= static_cast<Exp>(xt); ++ell) {
      QLaurent x = chain_lhs_coef(sys, t, ell) * s_at(ell) - s_at(ell - 1);
      for (int j = 1; j <= r - 1; ++j) {
        if (ell - j < 0) continue;
        for (int m = 1; m <= r - j; ++m)
          x -= signed_copy(t.e[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)].shifted(m * ell * n),
                           parity_sign(m + 1)) *
               s_at(ell - j);
      }
      res.push_back(std::move(x));
    }
    out.stages.push_back({"rec_double_prime", stage_series(std::move(res)), trunc});
  }

  QLaurent pn = QLaurent::one();
  for (std::size_t i = 0; i <= xt; ++i) {
    if (i > 0) pn *= one_minus(static_cast<Exp>(i) * n);
    st.mu.push_back(st.s[i] * pn);
  }
  const AlphaSystem red = sys.reduced();
  {
    const auto mu_at = [&](Exp i) { return i >= 0 ? st.mu[static_cast<std::size_t>(i)] : initial_u(-i); };
    std::vector<QLaurent> res{st.mu[0] - QLaurent::one()};
    for (Exp ell = 1; ell <= static_cast<Exp>(xt); ++ell)
      res.push_back(rec_row_residual(build_rec_row(red, ell), mu_at));
    out.stages.push_back({"rec_reduced", stage_series(std::move(res)), trunc});
  }

  {
    const Exp upto = std::min(trunc, static_cast<Exp>(xt) * n - red.a(1));
    std::vector<QLaurent> res{QLaurent{}};
    if (upto >= 0) res[0] = st.mu[xt] - product_F(red, std::max(work, upto));
    out.stages.push_back({"mu_limit", stage_series(std::move(res)), std::max<Exp>(upto, -1)});
  }
  return out;
}

inline Exp precision_deficit(const RawChain& raw) {
  Exp deficit = 0;
  for (const auto& st : raw.stages)
    if (st.judged_upto >= 0) deficit = std::max(deficit, st.judged_upto - st.residual.q_precision());
  return deficit;
}

inline ChainReport assemble_report(const AlphaSystem& sys, Exp ell_max, std::size_t x_trunc, Exp trunc, Exp work,
                                   RawChain raw) {
  ChainReport rep{sys, trunc, x_trunc, ell_max, work, {}, std::move(raw.state)};
  for (auto& st : raw.stages) {
    ChainStage out{st.name, XSeries(st.residual.x_trunc()), true, std::nullopt};
    if (st.judged_upto >= 0) {
      for (std::size_t i = 0; i <= st.residual.x_trunc(); ++i)
        out.residual[i] = st.residual[i].truncated(st.judged_upto);
      out.first_offending = out.residual.first_term();
      out.residual_zero = !out.first_offending.has_value();
    }
    rep.stages.push_back(std::move(out));
  }
  return rep;
}

inline void check_chain_args(const AlphaSystem& sys, Exp ell_max, std::size_t x_trunc, Exp trunc) {
  if (sys.r() < 2) throw InvalidInput("the chain needs at least two generators");
  if (trunc < 0) throw InvalidInput("trunc must be nonnegative");
  if (ell_max < static_cast<Exp>(x_trunc)) throw InvalidInput("ell_max must be at least x_trunc");
}

}  // namespace detail

/// Runs the transformation chain from the main recurrence of sys down to the
/// recurrence of the reduced system. Working precision grows until every
/// residual is known up to q^trunc. Nonzero residuals are reported, not thrown.
inline ChainReport verify_chain(const AlphaSystem& sys, Exp ell_max, std::size_t x_trunc, Exp trunc) {
  detail::check_chain_args(sys, ell_max, x_trunc, trunc);
  Exp work = trunc;
  for (int attempt = 0; attempt < 8; ++attempt) {
    detail::RawChain raw = detail::run_chain(sys, ell_max, x_trunc, trunc, work);
    const Exp deficit = detail::precision_deficit(raw);
    if (deficit > 0) {
      work += deficit;
      continue;
    }
    return detail::assemble_report(sys, ell_max, x_trunc, trunc, work, std::move(raw));
  }
  throw InsufficientPrecision("chain residuals did not reach q^" + std::to_string(trunc));
}

/// The chain started from a supplied u_0 ... u_ell_max instead of the recurrence.
inline ChainReport verify_chain_from(const AlphaSystem& sys, const std::vector<QLaurent>& u, std::size_t x_trunc,
                                     Exp trunc) {
  if (u.empty()) throw InvalidInput("need at least u_0");
  const auto ell_max = static_cast<Exp>(u.size()) - 1;
  detail::check_chain_args(sys, ell_max, x_trunc, trunc);
  Exp work = QLaurent::kExact;
  for (const auto& x : u) work = std::min(work, x.trunc());
  if (work == QLaurent::kExact) work = trunc;
  detail::RawChain raw = detail::run_chain(sys, ell_max, x_trunc, trunc, work, &u);
  if (detail::precision_deficit(raw) > 0)
    throw InsufficientPrecision("supplied u sequence is too short in q to judge residuals up to q^" +
                                std::to_string(trunc));
  return detail::assemble_report(sys, ell_max, x_trunc, trunc, work, std::move(raw));
}

/// verify_chain, throwing ChainBroken at the first stage with a nonzero residual.
inline ChainReport check_chain(const AlphaSystem& sys, Exp ell_max, std::size_t x_trunc, Exp trunc) {
  ChainReport rep = verify_chain(sys, ell_max, x_trunc, trunc);
  if (const ChainStage* bad = rep.first_failure()) {
    const auto& m = *bad->first_offending;
    throw ChainBroken(bad->name, "first nonzero monomial at x^" + std::to_string(m.x) + " q^" +
                                     std::to_string(m.q) + " with coefficient " + m.d.to_string());
  }
  return rep;
}

}  // namespace opart
