#include "ringnet/signal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>

namespace ringnet {

namespace {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

StepSignal::StepSignal(double period, std::vector<double> breakpoints, std::vector<double> values)
    : period_(period) {
  if (!(period > 0.0)) throw std::invalid_argument("StepSignal: period must be positive");
  if (breakpoints.empty() || breakpoints.size() != values.size())
    throw std::invalid_argument("StepSignal: need one value per breakpoint");
  for (std::size_t k = 0; k < breakpoints.size(); ++k) {
    if (breakpoints[k] < 0.0 || breakpoints[k] >= period)
      throw std::invalid_argument("StepSignal: breakpoints must lie in [0, period)");
    if (k > 0 && !(breakpoints[k] > breakpoints[k - 1]))
      throw std::invalid_argument("StepSignal: breakpoints must be strictly increasing");
    if (values[k] < 0.0 || values[k] > 1.0)
      throw std::invalid_argument("StepSignal: values must lie in [0, 1]");
  }

  // Normalize so the first piece starts at 0 (the gap before the first
  // breakpoint belongs to the wrapped last piece).
  starts_ = std::move(breakpoints);
  values_ = std::move(values);
  if (starts_.front() > 0.0) {
    starts_.insert(starts_.begin(), 0.0);
    values_.insert(values_.begin(), values_.back());
  }

  prefix_.assign(starts_.size(), 0.0);
  for (std::size_t k = 1; k < starts_.size(); ++k)
    prefix_[k] = prefix_[k - 1] + values_[k - 1] * (starts_[k] - starts_[k - 1]);
  full_period_ = prefix_.back() + values_.back() * (period_ - starts_.back());
}

StepSignal StepSignal::constant(double value, double period) {
  return StepSignal(period, {0.0}, {value});
}

bool StepSignal::is_constant() const {
  for (double v : values_)
    if (v != values_.front()) return false;
  return true;
}

double StepSignal::value_at(double t) const {
  double r = std::fmod(t, period_);
  if (r < 0.0) r += period_;
  const auto it = std::upper_bound(starts_.begin(), starts_.end(), r);
  const std::size_t idx = static_cast<std::size_t>(it - starts_.begin()) - 1;
  return values_[idx];
}

double StepSignal::prefix_at(double r) const {
  const auto it = std::upper_bound(starts_.begin(), starts_.end(), r);
  const std::size_t idx = static_cast<std::size_t>(it - starts_.begin()) - 1;
  return prefix_[idx] + values_[idx] * (r - starts_[idx]);
}

double StepSignal::integrate(double lo, double hi) const {
  if (lo >= hi) return 0.0;
  auto antiderivative = [this](double x) {
    const double k = std::floor(x / period_);
    double r = x - k * period_;
    if (r < 0.0) r = 0.0;
    if (r >= period_) r = period_;
    const double partial = (r >= period_) ? full_period_ : prefix_at(r);
    return k * full_period_ + partial;
  };
  return antiderivative(hi) - antiderivative(lo);
}

StepSignal StepSignal::shifted(double delta) const {
  std::vector<std::pair<double, double>> pieces;
  for (std::size_t k = 0; k < starts_.size(); ++k) {
    double s = std::fmod(starts_[k] - delta, period_);
    if (s < 0.0) s += period_;
    if (s >= period_) s = 0.0;
    pieces.emplace_back(s, values_[k]);
  }
  std::sort(pieces.begin(), pieces.end());
  std::vector<double> breaks, vals;
  for (const auto& [s, v] : pieces) {
    if (!breaks.empty() && s - breaks.back() <= 1e-15 * period_) {
      vals.back() = v;
      continue;
    }
    breaks.push_back(s);
    vals.push_back(v);
  }
  return StepSignal(period_, std::move(breaks), std::move(vals));
}

PEWitness verify_pe(const StepSignal& alpha, double T, double mu) {
  if (!(mu > 0.0) || T < mu) throw std::invalid_argument("verify_pe: need T >= mu > 0");

  // W(t) = int_t^{t+T} alpha is piecewise linear with kinks only where t or
  // t + T crosses a breakpoint (mod period).
  std::set<double> candidates{0.0};
  const double period = alpha.period();
  for (double b : alpha.breakpoints()) {
    for (int k = 0; k <= 1; ++k) {
      double c = std::fmod(b - k * T, period);
      if (c < 0.0) c += period;
      candidates.insert(c);
    }
  }

  PEWitness w;
  w.worst_integral = std::numeric_limits<double>::infinity();
  for (double c : candidates) {
    const double integral = alpha.integrate(c, c + T);
    if (integral < w.worst_integral) {
      w.worst_integral = integral;
      w.worst_t = c;
    }
  }
  w.is_pe = w.worst_integral >= mu - 1e-12;
  return w;
}

StepSignal make_single_circle_escape(double L, double b) {
  if (!(b > 0.0) || b >= L) throw std::invalid_argument("make_single_circle_escape: need 0 < b < L");
  const double on = 0.5 * (L - b);
  return StepSignal(L, {0.0, on}, {1.0, 0.0});
}

StepSignal make_two_circle_pe_escape(double ell, double a, double b) {
  if (!(ell > 0.0)) throw std::invalid_argument("make_two_circle_pe_escape: ell must be positive");
  if (!(b > a)) throw std::invalid_argument("make_two_circle_pe_escape: need b > a");
  if (b - a > 0.25 * ell + 1e-15 * ell)
    throw std::invalid_argument("make_two_circle_pe_escape: need b - a <= ell/4");

  // Zero exactly on the periodized image of [a - ell/2, b].
  const double len = (b - a) + 0.5 * ell;
  double lo = std::fmod(a - 0.5 * ell, ell);
  if (lo < 0.0) lo += ell;
  const double hi = lo + len;

  std::vector<double> breaks;
  std::vector<double> vals;
  if (hi <= ell) {
    if (lo > 0.0) {
      breaks = {0.0, lo};
      vals = {1.0, 0.0};
      if (hi < ell) {
        breaks.push_back(hi);
        vals.push_back(1.0);
      }
    } else {
      breaks = {0.0, hi};
      vals = {0.0, 1.0};
    }
  } else {
    const double wrap = hi - ell;
    breaks = {0.0, wrap, lo};
    vals = {0.0, 1.0, 0.0};
  }
  return StepSignal(ell, breaks, vals);
}

StepSignal make_random_pe(double T, double mu, std::uint64_t seed) {
  if (!(mu > 0.0) || T < mu) throw std::invalid_argument("make_random_pe: need T >= mu > 0");
  if (mu >= T * (1.0 - 1e-12)) return StepSignal::constant(1.0, T);

  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 100; ++attempt) {
    // Main on-block of length mu, not straddling the period boundary.
    const double offset = uniform01(rng) * (T - mu);
    struct Block {
      double lo, hi, value;
    };
    std::vector<Block> blocks{{offset, offset + mu, 1.0}};

    const int extra = static_cast<int>(rng() % 4);
    for (int e = 0; e < extra; ++e) {
      const double w = (0.02 + 0.2 * uniform01(rng)) * T;
      const double s = uniform01(rng) * (T - w);
      const double v = 0.2 + 0.8 * uniform01(rng);
      blocks.push_back({s, s + w, v});
    }

    // Paint blocks onto the period, combining overlaps by maximum.
    std::set<double> cuts{0.0};
    for (const auto& blk : blocks) {
      cuts.insert(blk.lo);
      if (blk.hi < T) cuts.insert(blk.hi);
    }
    std::vector<double> breaks(cuts.begin(), cuts.end());
    std::vector<double> vals;
    vals.reserve(breaks.size());
    for (std::size_t k = 0; k < breaks.size(); ++k) {
      const double mid =
          (k + 1 < breaks.size()) ? 0.5 * (breaks[k] + breaks[k + 1]) : 0.5 * (breaks[k] + T);
      double v = 0.0;
      for (const auto& blk : blocks)
        if (blk.lo <= mid && mid < blk.hi) v = std::max(v, blk.value);
      vals.push_back(v);
    }

    StepSignal candidate(T, breaks, vals);
    if (verify_pe(candidate, T, mu).is_pe) return candidate;
  }
  throw std::runtime_error("make_random_pe: exhausted resampling attempts (generator bug)");
}

}  // namespace ringnet
