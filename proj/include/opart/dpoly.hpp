#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "bigint.hpp"

namespace opart {

/// Polynomial in the marker d with exact integer coefficients.
/// Index = d-degree; trailing zeros are never stored.
class DPoly {
 public:
  DPoly() = default;
  DPoly(long long c) {  // NOLINT(google-explicit-constructor)
    if (c != 0) coeffs_.emplace_back(c);
  }
  DPoly(const BigInt& c) {  // NOLINT(google-explicit-constructor)
    if (c != 0) coeffs_.push_back(c);
  }
  explicit DPoly(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  /// c * d^k
  static DPoly monomial(std::size_t k, const BigInt& c = 1) {
    DPoly p;
    if (c != 0) {
      p.coeffs_.assign(k + 1, BigInt{0});
      p.coeffs_[k] = c;
    }
    return p;
  }

  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  std::size_t num_nonzero() const noexcept {
    std::size_t n = 0;
    for (const auto& c : coeffs_) n += (c != 0);
    return n;
  }
  const std::vector<BigInt>& coeffs() const noexcept { return coeffs_; }

  BigInt operator[](std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : BigInt{0}; }

  /// Value at d = 0.
  BigInt constant() const { return (*this)[0]; }

  bool is_constant(long long c) const {
    if (c == 0) return is_zero();
    return coeffs_.size() == 1 && coeffs_[0] == c;
  }

  DPoly& operator+=(const DPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }

  DPoly& operator-=(const DPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
  }

  DPoly& operator*=(const BigInt& c) {
    if (c == 0) {
      coeffs_.clear();
    } else {
      for (auto& x : coeffs_) x *= c;
    }
    return *this;
  }

  /// this += a * b, without temporaries.
  void add_product(const DPoly& a, const DPoly& b) {
    if (a.is_zero() || b.is_zero()) return;
    const std::size_t n = a.coeffs_.size() + b.coeffs_.size() - 1;
    if (coeffs_.size() < n) coeffs_.resize(n);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    trim();
  }

  /// Multiply by d^k.
  DPoly shifted(std::size_t k) const {
    if (is_zero() || k == 0) return *this;
    DPoly p;
    p.coeffs_.assign(k, BigInt{0});
    p.coeffs_.insert(p.coeffs_.end(), coeffs_.begin(), coeffs_.end());
    return p;
  }

  friend DPoly operator+(DPoly a, const DPoly& b) { return a += b; }
  friend DPoly operator-(DPoly a, const DPoly& b) { return a -= b; }
  friend DPoly operator-(DPoly a) {
    for (auto& x : a.coeffs_) x = -x;
    return a;
  }
  friend DPoly operator*(const DPoly& a, const DPoly& b) {
    DPoly p;
    p.add_product(a, b);
    return p;
  }
  friend DPoly operator*(DPoly a, const BigInt& c) { return a *= c; }
  friend bool operator==(const DPoly& a, const DPoly& b) { return a.coeffs_ == b.coeffs_; }

  /// "1 + 2d + d^2"
  std::string to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      const BigInt& c = coeffs_[k];
      if (c == 0) continue;
      BigInt mag = c < 0 ? BigInt(-c) : c;
      if (out.empty()) {
        if (c < 0) out += "-";
      } else {
        out += c < 0 ? " - " : " + ";
      }
      const bool unit = (mag == 1);
      if (k == 0 || !unit) out += mag.str();
      if (k >= 1) out += "d";
      if (k >= 2) out += "^" + std::to_string(k);
    }
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const DPoly& p) { return os << p.to_string(); }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<BigInt> coeffs_;
};

}  // namespace opart
