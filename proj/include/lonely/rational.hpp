#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "lonely/errors.hpp"

namespace lonely {

__extension__ typedef __int128 int128;

/// Narrows a 128-bit intermediate to 64 bits, throwing ArithmeticOverflow
/// instead of wrapping.
std::int64_t checked_narrow(int128 value);

/// Exact fraction num/den stored in lowest terms with den >= 1. The sign
/// lives in the numerator, so equal values have identical fields.
///
/// Every operation computes its intermediates at 128-bit width and narrows
/// the reduced result back to 64 bits; a result that does not fit throws
/// ArithmeticOverflow.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t integer) : num_(integer) {}  // NOLINT(implicit)
  /// Reduces num/den; throws DomainError when den == 0.
  Rational(std::int64_t num, std::int64_t den);

  /// Builds a reduced rational from 128-bit parts.
  static Rational from_wide(int128 num, int128 den);

  [[nodiscard]] constexpr std::int64_t num() const { return num_; }
  [[nodiscard]] constexpr std::int64_t den() const { return den_; }

  [[nodiscard]] constexpr bool is_integer() const { return den_ == 1; }
  [[nodiscard]] constexpr bool is_zero() const { return num_ == 0; }
  [[nodiscard]] constexpr bool is_negative() const { return num_ < 0; }

  /// Greatest integer <= value.
  [[nodiscard]] std::int64_t floor() const;
  /// Least integer >= value.
  [[nodiscard]] std::int64_t ceil() const;
  /// value - floor(value), always in [0, 1).
  [[nodiscard]] Rational frac() const;

  [[nodiscard]] double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  /// Text form "num/den" (integers keep the "/1").
  [[nodiscard]] std::string str() const;

  Rational operator-() const;
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend constexpr bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Reduced form of num/den with positive denominator.
Rational reduce(std::int64_t num, std::int64_t den);

/// Exact total order by cross multiplication.
std::strong_ordering compare(const Rational& a, const Rational& b);

/// A Rational known to lie in [0, 1/2]: a position's distance from the origin
/// of the unit circle.
using CircleDistance = Rational;

/// Distance from x to the nearest integer, in [0, 1/2].
CircleDistance circle_norm(const Rational& x);

/// Parses "p/q" or "p" (optional leading sign). DomainError on malformed text
/// or zero denominator; ArithmeticOverflow when a component exceeds 64 bits.
Rational parse_rational(std::string_view text);

/// Parses a decimal integer with the same error mapping as parse_rational.
std::int64_t parse_integer(std::string_view text);

}  // namespace lonely
