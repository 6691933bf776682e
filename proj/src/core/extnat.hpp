#pragma once
// Naturals extended with -inf and +inf. Value domain for heights, skeleton
// indices, dim and depth. Encoding keeps the natural order under <=>.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "error.hpp"

namespace etendue {

class ExtNat {
 public:
  constexpr ExtNat() : v_(0) {}

  static constexpr ExtNat neg_inf() { return ExtNat(kNegInf); }
  static constexpr ExtNat pos_inf() { return ExtNat(kPosInf); }
  static ExtNat of(std::int64_t n) {
    if (n < 0) fail(ErrorCode::not_natural, "finite extended natural must be >= 0");
    return ExtNat(n);
  }

  bool is_neg_inf() const { return v_ == kNegInf; }
  bool is_pos_inf() const { return v_ == kPosInf; }
  bool is_finite() const { return !is_neg_inf() && !is_pos_inf(); }
  std::int64_t value() const {
    internal_check(is_finite(), "value() on infinite ExtNat");
    return v_;
  }

  friend auto operator<=>(const ExtNat&, const ExtNat&) = default;

  std::string to_string() const {
    if (is_neg_inf()) return "-inf";
    if (is_pos_inf()) return "inf";
    return std::to_string(v_);
  }

  static std::optional<ExtNat> parse(std::string_view s) {
    if (s == "-inf") return neg_inf();
    if (s == "inf") return pos_inf();
    if (s.empty()) return std::nullopt;
    std::int64_t n = 0;
    for (char c : s) {
      if (c < '0' || c > '9') return std::nullopt;
      if (n > (kPosInf - 9) / 10) return std::nullopt;
      n = n * 10 + (c - '0');
    }
    return ExtNat(n);
  }

 private:
  static constexpr std::int64_t kNegInf = INT64_MIN;
  static constexpr std::int64_t kPosInf = INT64_MAX;
  explicit constexpr ExtNat(std::int64_t v) : v_(v) {}
  std::int64_t v_;
};

}  // namespace etendue
