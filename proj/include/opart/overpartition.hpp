#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "errors.hpp"

namespace opart {

struct Part {
  std::int64_t size;
  bool overlined;
  friend bool operator==(const Part&, const Part&) = default;
};

/// Parts in weakly decreasing order. Within a run of equal sizes at most one
/// copy is overlined, and it comes first.
class Overpartition {
 public:
  Overpartition() = default;
  explicit Overpartition(std::vector<Part> parts) : parts_(std::move(parts)) {}

  const std::vector<Part>& parts() const noexcept { return parts_; }
  bool empty() const noexcept { return parts_.empty(); }
  std::size_t size() const noexcept { return parts_.size(); }

  std::int64_t sum() const noexcept {
    std::int64_t s = 0;
    for (const auto& p : parts_) s += p.size;
    return s;
  }

  std::size_t non_overlined() const noexcept {
    std::size_t k = 0;
    for (const auto& p : parts_) k += !p.overlined;
    return k;
  }

  /// Empty string when structurally valid, otherwise the reason.
  std::string structural_error() const {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i].size <= 0) return "part " + std::to_string(i + 1) + " is not positive";
      if (i == 0) continue;
      const Part& prev = parts_[i - 1];
      if (parts_[i].size > prev.size) return "parts are not weakly decreasing";
      if (parts_[i].size == prev.size && parts_[i].overlined)
        return "size " + std::to_string(parts_[i].size) + " has an overlined copy that is not its first occurrence";
    }
    return {};
  }

  void validate() const {
    if (auto why = structural_error(); !why.empty()) throw MalformedOverpartition(why);
  }

  /// "5'+3" with a trailing apostrophe marking overlined parts.
  std::string to_string() const {
    if (parts_.empty()) return "()";
    std::string out;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) out += "+";
      out += std::to_string(parts_[i].size);
      if (parts_[i].overlined) out += "'";
    }
    return out;
  }

  friend bool operator==(const Overpartition&, const Overpartition&) = default;

 private:
  std::vector<Part> parts_;
};

/// Calls fn on every overpartition of n, each exactly once, in canonical form.
inline void for_each_overpartition(std::int64_t n, const std::function<void(const Overpartition&)>& fn) {
  std::vector<Part> parts;
  std::function<void(std::int64_t, std::int64_t)> rec = [&](std::int64_t remaining, std::int64_t max_size) {
    if (remaining == 0) {
      fn(Overpartition(parts));
      return;
    }
    for (std::int64_t s = std::min(remaining, max_size); s >= 1; --s) {
      for (std::int64_t c = 1; c * s <= remaining; ++c) {
        for (bool over : {false, true}) {
          const std::size_t mark = parts.size();
          parts.push_back({s, over});
          for (std::int64_t i = 1; i < c; ++i) parts.push_back({s, false});
          rec(remaining - c * s, s - 1);
          parts.resize(mark);
        }
      }
    }
  };
  rec(n, n);
}

}  // namespace opart
