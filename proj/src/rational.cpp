#include "ringnet/rational.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

namespace ringnet {

std::optional<Rational> rational_reconstruct(double x, std::int64_t max_den) {
  if (!(x > 0) || !std::isfinite(x)) return std::nullopt;
  // Continued-fraction convergents p_k/q_k of x.
  double y = x;
  std::int64_t p_prev = 0, q_prev = 1;
  std::int64_t p = 1, q = 0;  // convergent recurrences seeded at 0/1 and 1/0
  for (int iter = 0; iter < 64; ++iter) {
    const double fl = std::floor(y);
    if (fl > static_cast<double>(std::numeric_limits<std::int64_t>::max()) / 4) break;
    const std::int64_t a = static_cast<std::int64_t>(fl);
    const std::int64_t p_next = a * p + p_prev;
    const std::int64_t q_next = a * q + q_prev;
    if (q_next > max_den || p_next < 0 || q_next < 0) break;
    p_prev = p;
    q_prev = q;
    p = p_next;
    q = q_next;
    const double approx = static_cast<double>(p) / static_cast<double>(q);
    if (std::abs(x - approx) <= 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, x)) {
      if (p <= 0) return std::nullopt;
      return Rational(p, q);
    }
    const double frac = y - fl;
    if (frac <= 0) break;
    y = 1.0 / frac;
  }
  return std::nullopt;
}

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const std::int64_t num = std::stoll(text.substr(0, slash));
    const std::int64_t den = std::stoll(text.substr(slash + 1));
    return Rational(num, den);
  }
  const auto dot = text.find('.');
  if (dot == std::string::npos) {
    return Rational(std::stoll(text), 1);
  }
  const std::string whole = text.substr(0, dot);
  const std::string frac = text.substr(dot + 1);
  if (frac.size() > 12) throw std::invalid_argument("parse_rational: too many decimals");
  std::int64_t den = 1;
  for (std::size_t k = 0; k < frac.size(); ++k) den *= 10;
  const std::int64_t w = whole.empty() ? 0 : std::stoll(whole);
  const std::int64_t f = frac.empty() ? 0 : std::stoll(frac);
  return Rational(w * den + f, den);
}

std::string to_string(const Rational& r) {
  if (r.den == 1) return std::to_string(r.num);
  return std::to_string(r.num) + "/" + std::to_string(r.den);
}

}  // namespace ringnet
