#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>

namespace ringnet {

/// Exact positive rational number, always stored in lowest terms.
struct Rational {
  std::int64_t num = 1;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    if (num <= 0 || den < 0) throw std::invalid_argument("Rational: must be positive");
    const std::int64_t g = std::gcd(num, den);
    num /= g;
    den /= g;
  }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }

  /// a/b in lowest terms.
  static Rational ratio(const Rational& a, const Rational& b) {
    return Rational(a.num * b.den, a.den * b.num);
  }
};

/// Best rational approximation of x by continued-fraction convergents with
/// denominator at most max_den. Returns a value only when the convergent
/// reproduces x to machine accuracy, i.e. when x is (numerically) an exact
/// rational with a small denominator.
std::optional<Rational> rational_reconstruct(double x, std::int64_t max_den);

/// Parses "3", "3/4" or a plain decimal such as "0.25" into an exact rational.
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& r);

}  // namespace ringnet
