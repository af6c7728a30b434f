#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bgncg {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Exact rational value extended with +Infinity and -Infinity.
///
/// Costs and distances are never negative, but cost deltas are, so the
/// type is signed. Unreachable distances are +Infinity; a delta that goes
/// from an infinite cost to a finite one is -Infinity.
class Scalar {
 public:
  enum class Kind : std::uint8_t { NegInf, Finite, PosInf };

  Scalar() = default;
  Scalar(std::int64_t v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(Rational v) : value_(std::move(v)) {}  // NOLINT
  Scalar(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("zero denominator");
    value_ = Rational(BigInt(num), BigInt(den));
  }

  static Scalar infinity() { return Scalar(Kind::PosInf); }
  static Scalar neg_infinity() { return Scalar(Kind::NegInf); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_infinite() const { return kind_ != Kind::Finite; }
  bool is_pos_infinity() const { return kind_ == Kind::PosInf; }

  /// Throws std::domain_error on an infinite value.
  const Rational& value() const {
    if (!is_finite()) throw std::domain_error("infinite scalar has no rational value");
    return value_;
  }
  BigInt numerator() const { return boost::multiprecision::numerator(value()); }
  BigInt denominator() const { return boost::multiprecision::denominator(value()); }

  int sign() const {
    if (kind_ == Kind::PosInf) return 1;
    if (kind_ == Kind::NegInf) return -1;
    return value_.sign();
  }
  bool is_zero() const { return is_finite() && value_.is_zero(); }

  double to_double() const {
    if (kind_ == Kind::PosInf) return std::numeric_limits<double>::infinity();
    if (kind_ == Kind::NegInf) return -std::numeric_limits<double>::infinity();
    return value_.convert_to<double>();
  }

  /// "p/q", "p" when q == 1, "inf" or "-inf".
  std::string to_string() const {
    if (kind_ == Kind::PosInf) return "inf";
    if (kind_ == Kind::NegInf) return "-inf";
    const auto den = boost::multiprecision::denominator(value_);
    const auto num = boost::multiprecision::numerator(value_);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
  }

  /// Accepts "p", "p/q", "-p/q", "inf", "-inf" (surrounding blanks ignored).
  static Scalar parse(std::string_view text) {
    auto trim = [](std::string_view s) {
      while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
      while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
      return s;
    };
    text = trim(text);
    if (text == "inf" || text == "+inf" || text == "Infinity") return infinity();
    if (text == "-inf" || text == "-Infinity") return neg_infinity();
    auto parse_int = [&](std::string_view s) {
      s = trim(s);
      std::string_view digits = s;
      if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
      if (digits.empty()) throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
      for (char c : digits) {
        if (c < '0' || c > '9') throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
      }
      return BigInt(std::string(s.front() == '+' ? s.substr(1) : s));
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return Scalar(Rational(parse_int(text)));
    BigInt num = parse_int(text.substr(0, slash));
    BigInt den = parse_int(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Scalar(Rational(num, den));
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.is_finite() && b.is_finite()) return Scalar(Rational(a.value_ + b.value_));
    if (a.is_infinite() && b.is_infinite() && a.kind_ != b.kind_) {
      throw std::domain_error("inf + -inf is undefined");
    }
    return Scalar(a.is_infinite() ? a.kind_ : b.kind_);
  }
  friend Scalar operator-(const Scalar& a) {
    if (a.kind_ == Kind::PosInf) return neg_infinity();
    if (a.kind_ == Kind::NegInf) return infinity();
    return Scalar(Rational(-a.value_));
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.is_finite() && b.is_finite()) return Scalar(Rational(a.value_ * b.value_));
    const int s = a.sign() * b.sign();
    if (s == 0) throw std::domain_error("0 * inf is undefined");
    return s > 0 ? infinity() : neg_infinity();
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    if (b.is_infinite()) {
      if (a.is_infinite()) throw std::domain_error("inf / inf is undefined");
      return Scalar(0);
    }
    if (b.value_.is_zero()) throw std::domain_error("division by zero");
    if (a.is_infinite()) return (a.sign() * b.sign()) > 0 ? infinity() : neg_infinity();
    return Scalar(Rational(a.value_ / b.value_));
  }
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.kind_ != b.kind_) return false;
    return !a.is_finite() || a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
    if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
    if (!a.is_finite()) return std::strong_ordering::equal;
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (a.value_ > b.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  explicit Scalar(Kind k) : kind_(k) {}

  Kind kind_ = Kind::Finite;
  Rational value_{0};
};

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

/// Signed change `after - before` of a cost, with the convention that an
/// unchanged infinite cost is a zero change.
inline Scalar cost_delta(const Scalar& before, const Scalar& after) {
  if (before.is_pos_infinity() && after.is_pos_infinity()) return Scalar(0);
  return after - before;
}

inline Scalar min(const Scalar& a, const Scalar& b) { return b < a ? b : a; }
inline Scalar max(const Scalar& a, const Scalar& b) { return a < b ? b : a; }

/// Largest integer m >= 0 with m*m <= x (x finite, non-negative).
inline BigInt floor_sqrt(const Scalar& x) {
  if (!x.is_finite() || x.sign() < 0) throw std::domain_error("floor_sqrt of negative or infinite value");
  const BigInt whole = x.numerator() / x.denominator();
  BigInt m = boost::multiprecision::sqrt(whole);
  // sqrt(floor(x)) floors to the same integer as sqrt(x).
  return m;
}

/// Exact square root when x is the square of a rational, otherwise nothing.
inline std::optional<Scalar> exact_sqrt(const Scalar& x) {
  if (!x.is_finite() || x.sign() < 0) return std::nullopt;
  const BigInt num = x.numerator();
  const BigInt den = x.denominator();
  const BigInt rn = boost::multiprecision::sqrt(num);
  const BigInt rd = boost::multiprecision::sqrt(den);
  if (rn * rn != num || rd * rd != den) return std::nullopt;
  return Scalar(Rational(rn, rd));
}

}  // namespace bgncg
