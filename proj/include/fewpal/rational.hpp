#pragma once

// Exact rationals over arbitrary-precision integers and the exponent bounds
// built on them ("β-free" versus "β⁺-free").

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fewpal {

using BigInt = boost::multiprecision::cpp_int;

class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit from integers
  Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }
  Rational(std::int64_t n, std::int64_t d) : Rational(BigInt(n), BigInt(d)) {}

  // Accepts "a/b" or "a".
  static Rational parse(std::string_view text) {
    auto slash = text.find('/');
    try {
      if (slash == std::string_view::npos) return Rational(BigInt(std::string(text)), BigInt(1));
      return Rational(BigInt(std::string(text.substr(0, slash))),
                      BigInt(std::string(text.substr(slash + 1))));
    } catch (const std::runtime_error&) {
      throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    }
  }

  const BigInt& num() const noexcept { return num_; }
  const BigInt& den() const noexcept { return den_; }

  std::string str() const {
    if (den_ == 1) return num_.str();
    return num_.str() + "/" + den_.str();
  }

  double to_double() const {
    return static_cast<double>(num_.convert_to<long double>() / den_.convert_to<long double>());
  }

  // Smallest integer ≥ this.
  BigInt ceil() const {
    BigInt q = num_ / den_;
    if (q * den_ < num_) q += 1;
    return q;
  }
  BigInt floor() const {
    BigInt q = num_ / den_;
    if (q * den_ > num_) q -= 1;
    return q;
  }

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
    if (b.num_ == 0) throw std::domain_error("division by zero rational");
    return {a.num_ * b.den_, a.den_ * b.num_};
  }
  Rational operator-() const { return {-num_, den_}; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    BigInt l = a.num_ * b.den_;
    BigInt r = b.num_ * a.den_;
    if (l < r) return std::strong_ordering::less;
    if (l > r) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  void normalize() {
    if (den_ == 0) throw std::domain_error("rational with zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    BigInt g = boost::multiprecision::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  BigInt num_;
  BigInt den_;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

// strict == true is "β⁺-free": exponents > β are forbidden.
// strict == false is "β-free": exponents ≥ β are forbidden.
struct ExponentBound {
  Rational threshold;
  bool strict = true;

  ExponentBound() : threshold(2) {}
  ExponentBound(Rational beta, bool is_strict) : threshold(std::move(beta)), strict(is_strict) {
    if (threshold <= Rational(1)) {
      throw std::invalid_argument("exponent bound must exceed 1, got " + threshold.str());
    }
  }

  static ExponentBound plus(Rational beta) { return {std::move(beta), true}; }
  static ExponentBound free(Rational beta) { return {std::move(beta), false}; }

  bool forbids(const Rational& e) const { return strict ? e > threshold : e >= threshold; }

  // Shortest length of a repetition with period p that the bound forbids.
  std::size_t min_violating_length(std::size_t period) const {
    BigInt prod = threshold.num() * period;
    BigInt q = prod / threshold.den();
    bool exact = q * threshold.den() == prod;
    BigInt len = strict ? q + 1 : (exact ? q : q + 1);
    return len.convert_to<std::size_t>();
  }

  std::string str() const { return threshold.str() + (strict ? "+" : ""); }

  friend bool operator==(const ExponentBound&, const ExponentBound&) = default;
};

// Parses "7/3+" (strict) or "3" (non-strict).
inline ExponentBound parse_bound(std::string_view text) {
  bool strict = !text.empty() && text.back() == '+';
  if (strict) text.remove_suffix(1);
  return {Rational::parse(text), strict};
}

}  // namespace fewpal
