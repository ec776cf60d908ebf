#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "qlaurent.hpp"

namespace opart {

/// Series in the auxiliary variable x truncated after x^x_trunc, with QLaurent
/// coefficients. Each coefficient carries its own q-precision; q_precision() is
/// the precision of the whole series.
class XSeries {
 public:
  explicit XSeries(std::size_t x_trunc = 0) : coeffs_(x_trunc + 1) {}

  static XSeries from_coeffs(std::vector<QLaurent> coeffs) {
    if (coeffs.empty()) throw InvalidInput("an XSeries needs at least the x^0 coefficient");
    XSeries s;
    s.coeffs_ = std::move(coeffs);
    return s;
  }

  /// c * x^j
  static XSeries monomial(std::size_t x_trunc, std::size_t j, const QLaurent& c) {
    XSeries s(x_trunc);
    if (j <= x_trunc) s.coeffs_[j] = c;
    return s;
  }

  std::size_t x_trunc() const noexcept { return coeffs_.size() - 1; }
  const QLaurent& operator[](std::size_t j) const { return coeffs_.at(j); }
  QLaurent& operator[](std::size_t j) { return coeffs_.at(j); }
  const std::vector<QLaurent>& coeffs() const noexcept { return coeffs_; }

  Exp q_precision() const noexcept {
    Exp t = QLaurent::kExact;
    for (const auto& c : coeffs_) t = std::min(t, c.trunc());
    return t;
  }

  bool is_zero() const noexcept {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const QLaurent& c) { return c.is_zero(); });
  }

  /// (x-degree, q-exponent, d-coefficient) of the first nonzero monomial.
  struct Monomial {
    std::size_t x;
    Exp q;
    DPoly d;
  };
  std::optional<Monomial> first_term() const {
    for (std::size_t j = 0; j < coeffs_.size(); ++j)
      if (auto t = coeffs_[j].first_term()) return Monomial{j, t->first, t->second};
    return std::nullopt;
  }

  XSeries& operator+=(const XSeries& o) {
    check_same(o);
    for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] += o.coeffs_[j];
    return *this;
  }
  XSeries& operator-=(const XSeries& o) {
    check_same(o);
    for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] -= o.coeffs_[j];
    return *this;
  }
  friend XSeries operator+(XSeries a, const XSeries& b) { return a += b; }
  friend XSeries operator-(XSeries a, const XSeries& b) { return a -= b; }

  friend XSeries operator*(const XSeries& a, const XSeries& b) {
    a.check_same(b);
    XSeries p(a.x_trunc());
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i].is_zero() && a.coeffs_[i].is_exact()) continue;
      for (std::size_t j = 0; i + j < a.coeffs_.size(); ++j) p.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return p;
  }

  /// Every coefficient multiplied by c.
  XSeries scaled(const QLaurent& c) const {
    XSeries s = *this;
    for (auto& x : s.coeffs_) x = c * x;
    return s;
  }

  /// x^k * this, dropping degrees above x_trunc.
  XSeries shifted_x(std::size_t k) const {
    XSeries s(x_trunc());
    for (std::size_t j = 0; j + k < coeffs_.size(); ++j) s.coeffs_[j + k] = coeffs_[j];
    return s;
  }

  /// this / b for b with x^0 coefficient exactly 1.
  XSeries divided_by(const XSeries& b) const {
    check_same(b);
    if (!(b.coeffs_[0] == QLaurent::one()))
      throw NonUnitLeadingTerm("x-series divisor must have x^0 coefficient exactly 1");
    XSeries out(x_trunc());
    for (std::size_t n = 0; n < coeffs_.size(); ++n) {
      QLaurent acc = coeffs_[n];
      for (std::size_t k = 1; k <= n; ++k) acc -= b.coeffs_[k] * out.coeffs_[n - k];
      out.coeffs_[n] = std::move(acc);
    }
    return out;
  }

 private:
  void check_same(const XSeries& o) const {
    if (o.coeffs_.size() != coeffs_.size())
      throw TruncationMismatch("x-truncations differ: " + std::to_string(x_trunc()) + " vs " +
                               std::to_string(o.x_trunc()));
  }

  std::vector<QLaurent> coeffs_;
};

/// x -> x * q^{mN}: the x^j coefficient is multiplied by q^{j m N}.
inline XSeries substitute_x(const XSeries& f, Exp m, Exp modulus) {
  if (m <= 0 || modulus <= 0) throw InvalidInput("substitute_x needs positive m and N");
  XSeries s = f;
  for (std::size_t j = 0; j <= f.x_trunc(); ++j) s[j] = f[j].shifted(static_cast<Exp>(j) * m * modulus);
  return s;
}

}  // namespace opart
