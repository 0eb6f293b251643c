#ifndef FAI_RATIONAL_HPP
#define FAI_RATIONAL_HPP

#include <charconv>
#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>

#include "error.hpp"

namespace fai {

/// Exact non-overflowing (for desk-scale values) rational number, always reduced.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit from integer
  Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) {
    if (d == 0) throw Error(Errc::parse, "zero denominator");
    normalize();
  }

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return {a.num_ * b.num_, a.den_ * b.den_};
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    return {a.num_ * b.den_, a.den_ * b.num_};
  }
  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return a.num_ * b.den_ <=> b.num_ * a.den_;
  }

  /// Decimal when the denominator has only factors 2 and 5, `p/q` otherwise.
  std::string to_string() const {
    std::int64_t d = den_;
    int twos = 0, fives = 0;
    while (d % 2 == 0) { d /= 2; ++twos; }
    while (d % 5 == 0) { d /= 5; ++fives; }
    if (d != 1) return std::to_string(num_) + "/" + std::to_string(den_);
    int digits = twos > fives ? twos : fives;
    std::int64_t scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    std::int64_t scaled = num_ * (scale / den_);
    bool neg = scaled < 0;
    if (neg) scaled = -scaled;
    std::string int_part = std::to_string(scaled / scale);
    std::string frac = std::to_string(scaled % scale);
    std::string out = neg ? "-" : "";
    out += int_part;
    if (digits > 0) {
      frac.insert(0, static_cast<std::size_t>(digits) - frac.size(), '0');
      while (!frac.empty() && frac.back() == '0') frac.pop_back();
      if (!frac.empty()) out += "." + frac;
    }
    return out;
  }

 private:
  void normalize() {
    if (den_ < 0) { num_ = -num_; den_ = -den_; }
    std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) { num_ /= g; den_ /= g; }
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r' || s.front() == '\n'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n'))
    s.remove_suffix(1);
  return s;
}

inline std::optional<Rational> parse_decimal(std::string_view s) {
  if (s.empty()) return std::nullopt;
  bool neg = false;
  if (s.front() == '-' || s.front() == '+') {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  std::int64_t num = 0, den = 1;
  bool seen_digit = false, seen_dot = false;
  for (char ch : s) {
    if (ch == '.') {
      if (seen_dot) return std::nullopt;
      seen_dot = true;
    } else if (ch >= '0' && ch <= '9') {
      if (num > (INT64_MAX - 9) / 10 || (seen_dot && den > INT64_MAX / 10)) return std::nullopt;
      num = num * 10 + (ch - '0');
      if (seen_dot) den *= 10;
      seen_digit = true;
    } else {
      return std::nullopt;
    }
  }
  if (!seen_digit) return std::nullopt;
  return Rational(neg ? -num : num, den);
}

}  // namespace detail

/// Parses `0.25`, `1`, `.5`, or `p/q`. Throws Errc::parse on anything else.
inline Rational parse_rational(std::string_view text) {
  std::string_view s = detail::trim(text);
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto n = detail::parse_decimal(detail::trim(s.substr(0, slash)));
    auto d = detail::parse_decimal(detail::trim(s.substr(slash + 1)));
    if (n && d && n->den() == 1 && d->den() == 1 && d->num() != 0) return Rational(n->num(), d->num());
    throw Error(Errc::parse, "malformed rational '" + std::string(text) + "'");
  }
  if (auto r = detail::parse_decimal(s)) return *r;
  throw Error(Errc::parse, "malformed decimal '" + std::string(text) + "'");
}

/// Shortest round-trip decimal of a double, then exact parse. Used for JSON numbers.
inline Rational rational_from_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  std::string_view s(buf, static_cast<std::size_t>(res.ptr - buf));
  if (s.find('e') != std::string_view::npos || s.find('E') != std::string_view::npos)
    throw Error(Errc::parse, "degree needs plain decimal notation: " + std::string(s));
  return parse_rational(s);
}

}  // namespace fai

#endif  // FAI_RATIONAL_HPP
