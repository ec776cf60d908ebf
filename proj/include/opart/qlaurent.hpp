#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "dpoly.hpp"
#include "errors.hpp"

namespace opart {

using Exp = std::int64_t;

/// Laurent series in q with DPoly coefficients, known exactly up to q^trunc.
///
/// Precision is tracked, not assumed: a sum is known up to the smaller of the two
/// truncations, and a product up to min(Ta + min_exp(b), Tb + min_exp(a)), so a
/// factor with negative exponents honestly lowers the precision of the result.
/// Exact Laurent polynomials (q-binomials, recurrence coefficients) carry
/// trunc() == kExact. Coefficients above trunc() are unknown and never stored.
class QLaurent {
 public:
  static constexpr Exp kExact = Exp{1} << 40;

  /// The exact zero.
  QLaurent() = default;

  static QLaurent zero(Exp trunc = kExact) {
    QLaurent s;
    s.trunc_ = normalize_trunc(trunc);
    return s;
  }

  static QLaurent constant(const DPoly& c, Exp trunc = kExact) { return monomial(0, c, trunc); }
  static QLaurent one(Exp trunc = kExact) { return constant(DPoly(1), trunc); }

  /// c * q^e_q (c may carry d-powers).
  static QLaurent monomial(Exp e_q, const DPoly& c, Exp trunc = kExact) {
    QLaurent s = zero(trunc);
    if (e_q <= s.trunc_ && !c.is_zero()) {
      s.lo_ = e_q;
      s.coeffs_.push_back(c);
    }
    return s;
  }

  static QLaurent monomial(Exp e_q, std::size_t e_d = 0, long long c = 1, Exp trunc = kExact) {
    return monomial(e_q, DPoly::monomial(e_d, BigInt(c)), trunc);
  }

  bool is_exact() const noexcept { return trunc_ == kExact; }
  Exp trunc() const noexcept { return trunc_; }

  /// True when every coefficient known (exponent <= trunc) vanishes.
  bool is_zero() const noexcept { return coeffs_.empty(); }

  std::optional<Exp> min_exp() const noexcept {
    if (coeffs_.empty()) return std::nullopt;
    return lo_;
  }
  std::optional<Exp> max_exp() const noexcept {
    if (coeffs_.empty()) return std::nullopt;
    return lo_ + static_cast<Exp>(coeffs_.size()) - 1;
  }

  /// Coefficient of q^e; throws InsufficientPrecision above trunc().
  DPoly coefficient(Exp e) const {
    if (e > trunc_)
      throw InsufficientPrecision("coefficient of q^" + std::to_string(e) +
                                  " requested but series is known only up to q^" + std::to_string(trunc_));
    if (coeffs_.empty() || e < lo_ || e >= lo_ + static_cast<Exp>(coeffs_.size())) return {};
    return coeffs_[static_cast<std::size_t>(e - lo_)];
  }

  /// Calls fn(exponent, coefficient) for each nonzero term in ascending order.
  template <typename Fn>
  void for_each_term(Fn&& fn) const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      if (!coeffs_[i].is_zero()) fn(lo_ + static_cast<Exp>(i), coeffs_[i]);
  }

  std::size_t num_terms() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(coeffs_.begin(), coeffs_.end(), [](const DPoly& c) { return !c.is_zero(); }));
  }

  /// Lowest-exponent nonzero term, if any.
  std::optional<std::pair<Exp, DPoly>> first_term() const {
    if (coeffs_.empty()) return std::nullopt;
    return std::make_pair(lo_, coeffs_.front());
  }

  /// Drops knowledge above q^t; t must not exceed trunc().
  QLaurent truncated(Exp t) const {
    if (t > trunc_)
      throw InsufficientPrecision("cannot raise precision from q^" + std::to_string(trunc_) + " to q^" +
                                  std::to_string(t));
    QLaurent s = *this;
    s.trunc_ = normalize_trunc(t);
    s.normalize();
    return s;
  }

  QLaurent& operator+=(const QLaurent& o) { return accumulate(o, false); }
  QLaurent& operator-=(const QLaurent& o) { return accumulate(o, true); }

  friend QLaurent operator+(QLaurent a, const QLaurent& b) { return a += b; }
  friend QLaurent operator-(QLaurent a, const QLaurent& b) { return a -= b; }
  friend QLaurent operator-(QLaurent a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }

  friend QLaurent operator*(const QLaurent& a, const QLaurent& b) {
    const Exp t = normalize_trunc(std::min(a.trunc_ + b.effective_min(), b.trunc_ + a.effective_min()));
    QLaurent p = zero(t);
    if (a.coeffs_.empty() || b.coeffs_.empty()) return p;
    const Exp lo = a.lo_ + b.lo_;
    const Exp hi = std::min(*a.max_exp() + *b.max_exp(), t);
    if (hi < lo) return p;
    p.lo_ = lo;
    p.coeffs_.resize(static_cast<std::size_t>(hi - lo + 1));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i].is_zero()) continue;
      const Exp ei = a.lo_ + static_cast<Exp>(i);
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
        const Exp e = ei + b.lo_ + static_cast<Exp>(j);
        if (e > hi) break;
        p.coeffs_[static_cast<std::size_t>(e - lo)].add_product(a.coeffs_[i], b.coeffs_[j]);
      }
    }
    p.normalize();
    return p;
  }

  QLaurent& operator*=(const QLaurent& o) { return *this = *this * o; }

  /// c * d^e_d * q^e_q * this. A shift moves the known range along with the terms.
  QLaurent scale_by_monomial(Exp e_q, std::size_t e_d, long long c) const {
    return scale_by_monomial(e_q, e_d, BigInt(c));
  }

  QLaurent scale_by_monomial(Exp e_q, std::size_t e_d, const BigInt& c) const {
    QLaurent s = *this;
    if (!s.is_exact()) s.trunc_ = normalize_trunc(s.trunc_ + e_q);
    if (c == 0) {
      s.coeffs_.clear();
      return s;
    }
    s.lo_ += e_q;
    for (auto& x : s.coeffs_) x = x.shifted(e_d) * c;
    s.normalize();
    return s;
  }

  /// q^e * this.
  QLaurent shifted(Exp e) const { return scale_by_monomial(e, 0, 1); }

  /// Replaces q by q^k (k != 0). Negative k needs an exact operand.
  QLaurent substitute_power(Exp k) const {
    if (k == 0) throw InvalidInput("substitution q -> q^0 is not allowed");
    if (k < 0 && !is_exact()) throw InsufficientPrecision("q -> q^k with k < 0 needs an exact operand");
    QLaurent s = zero(is_exact() ? kExact : k * (trunc_ + 1) - 1);
    if (coeffs_.empty()) return s;
    const Exp a = lo_ * k;
    const Exp b = (*max_exp()) * k;
    s.lo_ = std::min(a, b);
    s.coeffs_.assign(static_cast<std::size_t>(std::max(a, b) - s.lo_ + 1), DPoly{});
    for_each_term([&](Exp e, const DPoly& c) { s.coeffs_[static_cast<std::size_t>(e * k - s.lo_)] = c; });
    s.normalize();
    return s;
  }

  /// The series with d set to 0.
  QLaurent at_d_zero() const {
    QLaurent s = *this;
    for (auto& c : s.coeffs_) c = DPoly(c.constant());
    s.normalize();
    return s;
  }

  /// Power-series quotient this / b. The divisor must have no negative exponents
  /// and constant term +-1. The quotient is known up to min(Ta, Tb + min_exp(this)),
  /// which must be finite; truncate an exact dividend first.
  QLaurent divided_by(const QLaurent& b) const {
    const DPoly b0 = b.coefficient(0);
    if ((b.min_exp() && *b.min_exp() < 0) || !(b0.is_constant(1) || b0.is_constant(-1)))
      throw NonUnitLeadingTerm("divisor must start with constant term +-1 at q^0");
    const Exp t = normalize_trunc(std::min(trunc_, b.trunc_ + effective_min()));
    if (t == kExact) throw InvalidInput("quotient of exact operands needs a truncation; truncate the dividend");
    QLaurent out = zero(t);
    if (coeffs_.empty() || lo_ > t) return out;
    const bool negate = b0.is_constant(-1);
    out.lo_ = lo_;
    out.coeffs_.resize(static_cast<std::size_t>(t - lo_ + 1));
    const Exp b_hi = b.max_exp().value_or(0);
    for (Exp n = lo_; n <= t; ++n) {
      DPoly acc = coefficient(n);
      for (Exp k = 1; k <= std::min(b_hi, n - lo_); ++k) {
        const DPoly& bk = b.coeffs_[static_cast<std::size_t>(k - b.lo_)];
        if (bk.is_zero()) continue;
        acc -= bk * out.coeffs_[static_cast<std::size_t>(n - k - lo_)];
      }
      out.coeffs_[static_cast<std::size_t>(n - lo_)] = negate ? -acc : acc;
    }
    out.normalize();
    return out;
  }

  /// Exact polynomial quotient; throws InvalidInput unless b divides this exactly.
  /// Both operands must be exact and b's lowest coefficient must be +-1.
  QLaurent exact_quotient(const QLaurent& b) const {
    if (!is_exact() || !b.is_exact()) throw InvalidInput("exact_quotient needs exact operands");
    if (b.coeffs_.empty()) throw InvalidInput("division by zero");
    if (coeffs_.empty()) return {};
    const DPoly& lead = b.coeffs_.front();
    if (!(lead.is_constant(1) || lead.is_constant(-1)))
      throw NonUnitLeadingTerm("exact quotient needs a unit lowest coefficient");
    const bool negate = lead.is_constant(-1);
    std::vector<DPoly> rem = coeffs_;
    const std::size_t nb = b.coeffs_.size();
    if (rem.size() < nb) throw InvalidInput("divisor does not divide dividend");
    const std::size_t nq = rem.size() - nb + 1;
    QLaurent out;
    out.lo_ = lo_ - b.lo_;
    out.coeffs_.resize(nq);
    for (std::size_t i = 0; i < nq; ++i) {
      DPoly qi = negate ? -rem[i] : rem[i];
      if (!qi.is_zero())
        for (std::size_t j = 0; j < nb; ++j) rem[i + j] -= qi * b.coeffs_[j];
      out.coeffs_[i] = std::move(qi);
    }
    for (std::size_t i = nq; i < rem.size(); ++i)
      if (!rem[i].is_zero()) throw InvalidInput("divisor does not divide dividend");
    out.normalize();
    return out;
  }

  /// Structural equality: same precision and same terms.
  friend bool operator==(const QLaurent& a, const QLaurent& b) {
    return a.trunc_ == b.trunc_ && a.lo_eq(b) && a.coeffs_ == b.coeffs_;
  }

  /// True iff the two series agree at every exponent <= upto.
  bool agrees_with(const QLaurent& o, Exp upto) const {
    if (upto > trunc_ || upto > o.trunc_)
      throw InsufficientPrecision("comparison up to q^" + std::to_string(upto) + " exceeds known precision");
    return (truncated(upto) - o.truncated(upto)).is_zero();
  }

  /// "1 + (1 + d)q + q^-2 + O(q^41)"
  std::string to_string() const {
    std::string out;
    for_each_term([&](Exp e, const DPoly& c) {
      const bool compound = c.num_nonzero() > 1;
      const bool neg = !compound && c.coeffs()[static_cast<std::size_t>(c.degree())] < 0;
      const std::string cs = (neg ? -c : c).to_string();
      std::string body;
      if (compound) {
        body = "(" + cs + ")";
      } else if (e == 0 || cs != "1") {
        body = cs;
      }
      if (e != 0) {
        body += "q";
        if (e != 1) body += "^" + std::to_string(e);
      }
      if (out.empty())
        out = neg ? "-" + body : body;
      else
        out += (neg ? " - " : " + ") + body;
    });
    if (out.empty()) out = "0";
    if (!is_exact()) out += " + O(q^" + std::to_string(trunc_ + 1) + ")";
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const QLaurent& s) { return os << s.to_string(); }

 private:
  static Exp normalize_trunc(Exp t) noexcept { return t >= kExact / 2 ? kExact : t; }

  /// Smallest exponent that may be nonzero: lo_ for nonempty, trunc + 1 for a
  /// truncated zero, kExact for the exact zero.
  Exp effective_min() const noexcept {
    if (!coeffs_.empty()) return lo_;
    return is_exact() ? kExact : trunc_ + 1;
  }

  bool lo_eq(const QLaurent& b) const noexcept { return coeffs_.empty() || lo_ == b.lo_; }

  QLaurent& accumulate(const QLaurent& o, bool subtract) {
    trunc_ = std::min(trunc_, o.trunc_);
    if (!o.coeffs_.empty()) {
      if (coeffs_.empty()) {
        lo_ = o.lo_;
      } else if (o.lo_ < lo_) {
        coeffs_.insert(coeffs_.begin(), static_cast<std::size_t>(lo_ - o.lo_), DPoly{});
        lo_ = o.lo_;
      }
      const Exp o_hi = std::min(*o.max_exp(), trunc_);
      if (o_hi >= lo_ && static_cast<Exp>(coeffs_.size()) < o_hi - lo_ + 1)
        coeffs_.resize(static_cast<std::size_t>(o_hi - lo_ + 1));
      for (Exp e = o.lo_; e <= o_hi; ++e) {
        const DPoly& c = o.coeffs_[static_cast<std::size_t>(e - o.lo_)];
        if (c.is_zero()) continue;
        auto& dst = coeffs_[static_cast<std::size_t>(e - lo_)];
        if (subtract)
          dst -= c;
        else
          dst += c;
      }
    }
    normalize();
    return *this;
  }

  void normalize() {
    if (!coeffs_.empty()) {
      const Exp hi = lo_ + static_cast<Exp>(coeffs_.size()) - 1;
      if (hi > trunc_) {
        if (trunc_ < lo_)
          coeffs_.clear();
        else
          coeffs_.resize(static_cast<std::size_t>(trunc_ - lo_ + 1));
      }
    }
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    std::size_t lead = 0;
    while (lead < coeffs_.size() && coeffs_[lead].is_zero()) ++lead;
    if (lead > 0) {
      coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
      lo_ += static_cast<Exp>(lead);
    }
    if (coeffs_.empty()) lo_ = 0;
  }

  Exp lo_ = 0;
  std::vector<DPoly> coeffs_;
  Exp trunc_ = kExact;
};

}  // namespace opart
