#include "lonely/rational.hpp"

#include <charconv>
#include <limits>

namespace lonely {
namespace {

constexpr int128 kInt64Max = std::numeric_limits<std::int64_t>::max();
constexpr int128 kInt64Min = std::numeric_limits<std::int64_t>::min();

int128 abs128(int128 x) { return x < 0 ? -x : x; }

int128 gcd128(int128 a, int128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    const int128 r = a % b;
    a = b;
    b = r;
  }
  return a;
}

// floor(a / b) for b > 0.
int128 floor_div(int128 a, int128 b) {
  int128 q = a / b;
  if ((a % b != 0) && (a < 0)) --q;
  return q;
}

}  // namespace

std::int64_t checked_narrow(int128 value) {
  if (value > kInt64Max || value < kInt64Min) {
    throw ArithmeticOverflow("rational component exceeds 64-bit range");
  }
  return static_cast<std::int64_t>(value);
}

Rational::Rational(std::int64_t num, std::int64_t den) {
  *this = from_wide(num, den);
}

Rational Rational::from_wide(int128 num, int128 den) {
  if (den == 0) throw DomainError("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const int128 g = gcd128(num, den);
  Rational r;
  if (g > 1) {
    num /= g;
    den /= g;
  }
  r.num_ = checked_narrow(num);
  r.den_ = checked_narrow(den);
  // The canonical form must keep den positive and representable after negation.
  if (r.num_ == std::numeric_limits<std::int64_t>::min()) {
    throw ArithmeticOverflow("rational numerator at INT64_MIN cannot be negated");
  }
  return r;
}

std::int64_t Rational::floor() const {
  return static_cast<std::int64_t>(floor_div(num_, den_));
}

std::int64_t Rational::ceil() const {
  return static_cast<std::int64_t>(-floor_div(-static_cast<int128>(num_), den_));
}

Rational Rational::frac() const {
  const int128 fl = floor_div(num_, den_);
  return from_wide(static_cast<int128>(num_) - fl * den_, den_);
}

std::string Rational::str() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const {
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational::from_wide(static_cast<int128>(a.num_) * b.den_ + static_cast<int128>(b.num_) * a.den_,
                             static_cast<int128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return Rational::from_wide(static_cast<int128>(a.num_) * b.den_ - static_cast<int128>(b.num_) * a.den_,
                             static_cast<int128>(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return Rational::from_wide(static_cast<int128>(a.num_) * b.num_, static_cast<int128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw DomainError("division by zero");
  return Rational::from_wide(static_cast<int128>(a.num_) * b.den_, static_cast<int128>(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  // |num| < 2^63 and den < 2^63, so both products fit in 127 bits.
  const int128 lhs = static_cast<int128>(a.num_) * b.den_;
  const int128 rhs = static_cast<int128>(b.num_) * a.den_;
  return lhs <=> rhs;
}

Rational reduce(std::int64_t num, std::int64_t den) { return Rational(num, den); }

std::strong_ordering compare(const Rational& a, const Rational& b) { return a <=> b; }

CircleDistance circle_norm(const Rational& x) {
  const Rational f = x.frac();
  const Rational g = Rational(1) - f;
  return f < g ? f : g;
}

std::int64_t parse_integer(std::string_view text) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) throw DomainError("empty integer");
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec == std::errc::result_out_of_range) {
    throw ArithmeticOverflow("integer '" + std::string(text) + "' exceeds 64-bit range");
  }
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw DomainError("malformed integer '" + std::string(text) + "'");
  }
  return value;
}

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  const std::int64_t num = parse_integer(text.substr(0, slash));
  const std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && den_text.front() == '-') {
    throw DomainError("malformed rational '" + std::string(text) + "'");
  }
  return Rational(num, parse_integer(den_text));
}

}  // namespace lonely
