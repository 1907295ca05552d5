#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>

#include "projconst/errors.hpp"

namespace projconst {

/// Exact rational with 64-bit numerator and positive denominator, always in
/// lowest terms. Arithmetic throws PrecisionError on overflow.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1) : num_(num), den_(den) {
    if (den_ == 0) throw DomainError("Rational: zero denominator");
    normalize();
  }

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

  std::string to_string() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(add(mul(a.num_, b.den_), mul(b.num_, a.den_)), mul(a.den_, b.den_));
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    const std::int64_t g1 = std::gcd(a.num_, b.den_);
    const std::int64_t g2 = std::gcd(b.num_, a.den_);
    return Rational(mul(a.num_ / (g1 ? g1 : 1), b.num_ / (g2 ? g2 : 1)),
                    mul(a.den_ / (g2 ? g2 : 1), b.den_ / (g1 ? g1 : 1)));
  }
  friend bool operator==(const Rational&, const Rational&) = default;

 private:
  static std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw PrecisionError("Rational: overflow");
    return r;
  }
  static std::int64_t add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw PrecisionError("Rational: overflow");
    return r;
  }
  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const std::int64_t g = std::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Exact integer square root if n is a perfect square.
inline std::optional<std::uint64_t> exact_sqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::llround(std::sqrt(static_cast<double>(n))));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  if (r * r == n) return r;
  return std::nullopt;
}

/// Writes n = s^2 * c with c squarefree; returns {s, c}.
inline std::pair<std::uint64_t, std::uint64_t> squarefree_split(std::uint64_t n) {
  std::uint64_t s = 1, c = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    while (n % (p * p) == 0) {
      n /= p * p;
      s *= p;
    }
    if (n % p == 0) {
      n /= p;
      c *= p;
    }
  }
  return {s, c * n};
}

/// a + b*sqrt(c) with rational a, b and squarefree integer c >= 1.
struct QuadraticSurd {
  Rational a;
  Rational b;
  std::uint64_t c = 1;

  bool is_rational() const noexcept { return c == 1 || b.num() == 0; }

  Rational rational_value() const {
    if (!is_rational()) throw DomainError("QuadraticSurd: value is irrational");
    return c == 1 ? a + b : a;
  }

  double to_double() const { return a.to_double() + b.to_double() * std::sqrt(static_cast<double>(c)); }

  /// "4/3" for rationals, otherwise "(p+q*sqrt(c))/d".
  std::string to_string() const {
    if (is_rational()) return rational_value().to_string();
    const std::int64_t d = std::lcm(a.den(), b.den());
    const std::int64_t p = a.num() * (d / a.den());
    const std::int64_t q = b.num() * (d / b.den());
    std::string s = "(" + std::to_string(p);
    s += q < 0 ? "-" : "+";
    const std::int64_t aq = q < 0 ? -q : q;
    if (aq != 1) s += std::to_string(aq) + "*";
    s += "sqrt(" + std::to_string(c) + "))";
    if (d != 1) s += "/" + std::to_string(d);
    return s;
  }
};

}  // namespace projconst
