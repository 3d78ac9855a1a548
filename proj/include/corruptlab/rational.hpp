#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace corruptlab {

/// Exact non-negative-denominator rational over int64, always in lowest terms.
/// Arithmetic throws InvalidParameter on overflow.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  /// Accepts "7", "7/2", "-3/4" or a plain decimal such as "3.25".
  static Rational parse(std::string_view text);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string to_string() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, std::int64_t k) { return a * Rational(k); }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  /// floor(a / b) for a ≥ 0, b > 0.
  friend std::int64_t floor_div(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace corruptlab
