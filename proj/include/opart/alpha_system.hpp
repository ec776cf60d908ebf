#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"

namespace opart {

/// The modulus system (N, A): generators a(1) < ... < a(r), the subset sums A',
/// and the number/smallest-summand maps w and v on A'.
///
/// Every subset sum keeps the generator subset it came from, so w and v are
/// lookups. Immutable after construction.
class AlphaSystem {
 public:
  static constexpr int kDefaultMaxGenerators = 16;

  struct SubsetSum {
    std::int64_t value;
    std::uint32_t mask;  ///< bit i set iff a(i+1) is a summand
    int weight;          ///< w: number of summands
    std::int64_t smallest;  ///< v: smallest summand
  };

  /// Validates and builds the system; throws DominanceViolated, SumsNotDistinct,
  /// ModulusTooSmall or TooManyGenerators.
  static AlphaSystem build(std::vector<std::int64_t> a, std::int64_t modulus,
                           int max_generators = kDefaultMaxGenerators) {
    if (a.empty()) throw InvalidInput("generator list is empty");
    if (static_cast<int>(a.size()) > max_generators)
      throw TooManyGenerators("r = " + std::to_string(a.size()) + " exceeds the cap of " +
                              std::to_string(max_generators));
    if (modulus <= 0) throw InvalidInput("modulus N must be positive");
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] <= 0) throw InvalidInput("generators must be positive");
      if (i > 0 && a[i] <= a[i - 1]) throw InvalidInput("generators must be strictly increasing");
    }

    AlphaSystem sys;
    sys.a_ = std::move(a);
    sys.modulus_ = modulus;
    const int r = static_cast<int>(sys.a_.size());
    const std::uint32_t count = (std::uint32_t{1} << r);
    sys.sums_.reserve(count - 1);
    for (std::uint32_t mask = 1; mask < count; ++mask) {
      SubsetSum s{0, mask, 0, 0};
      for (int i = r - 1; i >= 0; --i) {
        if (mask & (std::uint32_t{1} << i)) {
          s.value += sys.a_[i];
          ++s.weight;
          s.smallest = sys.a_[i];
        }
      }
      sys.sums_.push_back(s);
    }
    std::sort(sys.sums_.begin(), sys.sums_.end(),
              [](const SubsetSum& x, const SubsetSum& y) { return x.value < y.value; });
    for (std::size_t i = 1; i < sys.sums_.size(); ++i) {
      if (sys.sums_[i].value == sys.sums_[i - 1].value)
        throw SumsNotDistinct("subset sum " + std::to_string(sys.sums_[i].value) +
                              " arises from two different subsets");
    }
    std::int64_t prefix = 0;
    for (std::size_t k = 0; k < sys.a_.size(); ++k) {
      if (k > 0 && sys.a_[k] <= prefix)
        throw DominanceViolated("a(" + std::to_string(k + 1) + ") = " + std::to_string(sys.a_[k]) +
                                " is not larger than a(1)+...+a(" + std::to_string(k) +
                                ") = " + std::to_string(prefix));
      prefix += sys.a_[k];
    }
    if (modulus < sys.sums_.back().value)
      throw ModulusTooSmall("N = " + std::to_string(modulus) + " is smaller than a(1)+...+a(r) = " +
                            std::to_string(sys.sums_.back().value));

    return sys;
  }

  int r() const noexcept { return static_cast<int>(a_.size()); }
  std::int64_t modulus() const noexcept { return modulus_; }
  std::span<const std::int64_t> generators() const noexcept { return a_; }

  /// a(i) for 1 <= i <= r + 1; a(r+1) is the sentinel N + a(1).
  std::int64_t a(int i) const {
    if (i == r() + 1) return modulus_ + a_.front();
    if (i < 1 || i > r()) throw InvalidInput("generator index out of range: " + std::to_string(i));
    return a_[static_cast<std::size_t>(i - 1)];
  }

  /// All 2^r - 1 subset sums, ascending.
  std::span<const SubsetSum> sums() const noexcept { return sums_; }
  std::size_t num_sums() const noexcept { return sums_.size(); }

  /// alpha(i) for 1 <= i <= 2^r; alpha(2^r) is the sentinel a(r+1).
  std::int64_t alpha(std::size_t i) const {
    if (i == sums_.size() + 1) return a(r() + 1);
    if (i < 1 || i > sums_.size()) throw InvalidInput("alpha index out of range: " + std::to_string(i));
    return sums_[i - 1].value;
  }

  bool is_sum(std::int64_t value) const noexcept { return find(value) != nullptr; }

  const SubsetSum& sum_info(std::int64_t value) const {
    const SubsetSum* s = find(value);
    if (s == nullptr) throw InvalidInput(std::to_string(value) + " is not a subset sum of A");
    return *s;
  }

  int w(std::int64_t alpha_value) const { return sum_info(alpha_value).weight; }
  std::int64_t v(std::int64_t alpha_value) const { return sum_info(alpha_value).smallest; }

  /// Least positive residue of m modulo N, in [1, N]. Negative m allowed.
  std::int64_t beta(std::int64_t m) const noexcept {
    const std::int64_t rem = ((m % modulus_) + modulus_) % modulus_;
    return rem == 0 ? modulus_ : rem;
  }

  /// The system on a(1), ..., a(r-1) with the same modulus.
  AlphaSystem reduced() const {
    if (r() < 2) throw InvalidInput("cannot drop the last generator of a one-generator system");
    return build(std::vector<std::int64_t>(a_.begin(), a_.end() - 1), modulus_);
  }

  std::string describe() const {
    std::string out = "N=" + std::to_string(modulus_) + ", A={";
    for (std::size_t i = 0; i < a_.size(); ++i) out += (i ? "," : "") + std::to_string(a_[i]);
    return out + "}";
  }

  friend bool operator==(const AlphaSystem& x, const AlphaSystem& y) {
    return x.modulus_ == y.modulus_ && x.a_ == y.a_;
  }

 private:
  AlphaSystem() = default;

  const SubsetSum* find(std::int64_t value) const noexcept {
    auto it = std::lower_bound(sums_.begin(), sums_.end(), value,
                               [](const SubsetSum& s, std::int64_t x) { return s.value < x; });
    return (it != sums_.end() && it->value == value) ? &*it : nullptr;
  }

  std::vector<std::int64_t> a_;
  std::int64_t modulus_ = 0;
  std::vector<SubsetSum> sums_;
};

inline AlphaSystem build_system(std::vector<std::int64_t> a, std::int64_t modulus) {
  return AlphaSystem::build(std::move(a), modulus);
}

}  // namespace opart
