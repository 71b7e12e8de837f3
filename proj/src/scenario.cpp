#include "ringnet/scenario.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "ringnet/oracle.hpp"
#include "ringnet/solver.hpp"

namespace ringnet {

namespace {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<StepSignal> with_undamped_convention(std::vector<StepSignal> damped, int n) {
  while (static_cast<int>(damped.size()) < n) damped.push_back(StepSignal::constant(1.0));
  return damped;
}

}  // namespace

ScenarioSpec single_circle_escape(const Rational& L, double b, const std::string& alpha) {
  const double length = L.value();
  if (!(b > 0.0) || b >= length)
    throw std::invalid_argument("single_circle_escape: need 0 < b < L");

  ScenarioSpec spec;
  spec.name = "single_circle_escape";
  Eigen::MatrixXd m(1, 1);
  m << 1.0;
  spec.net = Network::make({Length(L, LengthTag::One)}, {{0.0, b}}, m);

  // Bump strictly inside [b, (b + L)/2], 1% margin on both sides.
  const double hi = 0.5 * (b + length);
  const double margin = 0.01 * (hi - b);
  spec.data = InitialData::single_bump(spec.net, {b + margin}, {hi - margin}, {1.0});

  if (alpha == "escape") {
    spec.signals = {make_single_circle_escape(length, b)};
    spec.T = length;
    spec.mu = 0.5 * (length - b);
    spec.expect = Expectation::periodic(length);
  } else if (alpha == "one") {
    spec.signals = {StepSignal::constant(1.0)};
    spec.T = 1.0;
    spec.mu = 1.0;
    spec.expect = Expectation::exp_decay(b / length);
  } else if (alpha == "zero") {
    spec.signals = {StepSignal::constant(0.0)};
    spec.T = 1.0;
    spec.mu = 1.0;
    spec.expect = Expectation::norm_constant();
  } else {
    throw std::invalid_argument("single_circle_escape: alpha must be escape, one or zero");
  }
  return spec;
}

ScenarioSpec two_circle_rational_periodic(std::int64_t p, std::int64_t q, const Rational& ell) {
  if (p < 1 || q < 1 || std::gcd(p, q) != 1)
    throw std::invalid_argument("two_circle_rational_periodic: p, q must be coprime positive");
  const double cell = ell.value();

  ScenarioSpec spec;
  spec.name = "two_circle_rational_periodic";
  Eigen::MatrixXd m(2, 2);
  m << 0.5, 0.5, 0.5, 0.5;
  spec.net = Network::make({Length(Rational(p * ell.num, ell.den), LengthTag::One),
                            Length(Rational(q * ell.num, ell.den), LengthTag::One)},
                           {}, m);
  spec.data = InitialData::bump_comb(spec.net, cell, 0.01 * cell, 0.99 * cell, 1.0);
  spec.signals = with_undamped_convention({}, 2);
  spec.T = cell;
  spec.mu = cell;
  spec.expect = Expectation::periodic(cell);
  return spec;
}

ScenarioSpec two_circle_pe_periodic(std::int64_t p, std::int64_t q, const Rational& ell, double a,
                                    double b) {
  if (p < 1 || q < 1 || std::gcd(p, q) != 1)
    throw std::invalid_argument("two_circle_pe_periodic: p, q must be coprime positive");
  const double cell = ell.value();
  if (!(b - a > 0.0) || b - a > 0.25 * cell * (1.0 + 1e-12))
    throw std::invalid_argument("two_circle_pe_periodic: need 0 < b - a <= ell/4");

  ScenarioSpec spec;
  spec.name = "two_circle_pe_periodic";
  Eigen::MatrixXd m(2, 2);
  m << 0.5, 0.5, 0.5, 0.5;
  spec.net = Network::make({Length(Rational(p * ell.num, ell.den), LengthTag::One),
                            Length(Rational(q * ell.num, ell.den), LengthTag::One)},
                           {{a, b}}, m);
  // Support inside (0, ell/2), 1% margin of the half cell on both sides.
  const double half = 0.5 * cell;
  spec.data = InitialData::bump_comb(spec.net, cell, 0.01 * half, half - 0.01 * half, 1.0);
  spec.signals = with_undamped_convention({make_two_circle_pe_escape(cell, a, b)}, 2);
  spec.T = cell;          // 4 * ell_0
  spec.mu = 0.25 * cell;  // ell_0
  spec.expect = Expectation::periodic(cell);
  return spec;
}

ScenarioSpec two_circle_irrational_mean(LengthTag tag1, LengthTag tag2) {
  if (tag1 == tag2)
    throw std::invalid_argument("two_circle_irrational_mean: tags must differ");

  ScenarioSpec spec;
  spec.name = "two_circle_irrational_mean";
  Eigen::MatrixXd m(2, 2);
  m << 0.5, 0.5, 0.5, 0.5;
  spec.net = Network::make({Length(Rational(1, 1), tag1), Length(Rational(1, 1), tag2)}, {}, m);
  const double l1 = spec.net.length(0), l2 = spec.net.length(1);
  spec.data = InitialData::single_bump(spec.net, {0.15 * l1, 0.25 * l2},
                                       {0.75 * l1, 0.85 * l2}, {1.5, 1.0});
  spec.signals = with_undamped_convention({}, 2);
  spec.T = 1.0;
  spec.mu = 1.0;
  spec.expect = Expectation::converges_to_mean(1e-2);
  return spec;
}

Eigen::MatrixXd random_mixing_matrix(int N, std::uint64_t seed) {
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + 12345u);
  Eigen::MatrixXd m(N, N);
  for (int j = 0; j < N; ++j) {
    double col_sum = 0.0;
    std::vector<double> mag(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) {
      mag[static_cast<std::size_t>(i)] = 1.0 + uniform01(rng);
      col_sum += mag[static_cast<std::size_t>(i)];
    }
    const double scale = (0.9 + 0.1 * uniform01(rng)) / col_sum;
    for (int i = 0; i < N; ++i) {
      const double sign = (rng() & 1u) ? 1.0 : -1.0;
      m(i, j) = sign * mag[static_cast<std::size_t>(i)] * scale;
    }
  }
  return m;
}

ScenarioSpec main_theorem_demo(int N, int N_d, const std::vector<LengthTag>& tags,
                               std::uint64_t seed, double T, double mu) {
  if (N < 2 || N_d < 1 || N_d > N) throw std::invalid_argument("main_theorem_demo: bad N, N_d");
  if (static_cast<int>(tags.size()) != N)
    throw std::invalid_argument("main_theorem_demo: need one tag per circle");

  std::mt19937_64 rng(seed ^ 0xabcdef12345678ull);
  ScenarioSpec spec;
  spec.name = "main_theorem_demo";
  spec.seed = seed;

  std::vector<Length> lengths;
  for (int i = 0; i < N; ++i) lengths.emplace_back(Rational(1, 1), tags[static_cast<std::size_t>(i)]);

  std::vector<std::pair<double, double>> damped;
  for (int i = 0; i < N_d; ++i) {
    const double li = lengths[static_cast<std::size_t>(i)].value();
    const double a = (0.05 + 0.25 * uniform01(rng)) * li;
    const double b = a + (0.2 + 0.3 * uniform01(rng)) * li;
    damped.emplace_back(a, std::min(b, 0.95 * li));
  }

  spec.net = Network::make(std::move(lengths), std::move(damped), random_mixing_matrix(N, seed));

  std::vector<StepSignal> signals;
  for (int i = 0; i < N_d; ++i) signals.push_back(make_random_pe(T, mu, seed + 101u * static_cast<std::uint64_t>(i)));
  spec.signals = with_undamped_convention(std::move(signals), N);

  std::vector<double> lo(static_cast<std::size_t>(N)), hi(static_cast<std::size_t>(N)),
      height(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) {
    const double li = spec.net.length(i);
    const double start = (0.05 + 0.4 * uniform01(rng)) * li;
    const double width = (0.15 + 0.35 * uniform01(rng)) * li;
    lo[static_cast<std::size_t>(i)] = start;
    hi[static_cast<std::size_t>(i)] = std::min(start + width, 0.95 * li);
    height[static_cast<std::size_t>(i)] = 0.5 + uniform01(rng);
  }
  spec.data = InitialData::single_bump(spec.net, lo, hi, height);

  spec.T = T;
  spec.mu = mu;
  spec.expect = Expectation::exp_decay(0.0);
  return spec;
}

ScenarioCheck check_scenario(const ScenarioSpec& spec, const ScenarioOptions& opt) {
  ScenarioCheck result;
  std::ostringstream detail;

  switch (spec.expect.kind) {
    case ExpectationKind::Periodic: {
      const double period = spec.expect.period;
      const std::vector<double> starts{0.0, period / 3.0, 5.0 * period};
      TraceField f(spec.net, spec.signals, spec.data, 6.5 * period + spec.net.l_max());
      double worst = 0.0;
      for (double t0 : starts)
        worst = std::max(worst, field_difference_l2(f, t0, t0 + period, opt.resolution));
      result.measured = worst;
      result.pass = worst <= 1e-9;
      detail << "max ||u(t0+P) - u(t0)||_2 = " << worst;
      break;
    }
    case ExpectationKind::NormConstant: {
      const double l_max = spec.net.l_max();
      TraceField f(spec.net, spec.signals, spec.data, 6.0 * l_max);
      const double base = std::sqrt(f.circle_integral_pow(0, 0.0, 2, opt.resolution));
      double worst = 0.0;
      for (double c : {0.37, 1.13, 2.71, 5.41}) {
        double v = 0.0;
        for (int i = 0; i < spec.net.n; ++i)
          v += f.circle_integral_pow(i, c * l_max, 2, opt.resolution);
        worst = std::max(worst, std::abs(std::sqrt(v) - base));
      }
      result.measured = worst;
      result.pass = worst <= 1e-10 * std::max(1.0, base);
      detail << "max |  ||u(t)||_2 - ||u_0||_2 | = " << worst;
      break;
    }
    case ExpectationKind::ConvergesToMean: {
      const double t_star = 200.0 * spec.net.l_max();
      TraceField f(spec.net, spec.signals, spec.data, t_star + 1.0);
      double mass = 0.0, total_len = 0.0;
      for (int i = 0; i < spec.net.n; ++i) {
        mass += f.circle_integral_pow(i, 0.0, 1, opt.resolution);
        total_len += spec.net.length(i);
      }
      const double mean = mass / total_len;
      // Plain midpoint grid; the target tolerance is far above grid error.
      double acc = 0.0;
      for (int i = 0; i < spec.net.n; ++i) {
        const double li = spec.net.length(i);
        const double h = li / opt.resolution;
        for (int k = 0; k < opt.resolution; ++k) {
          const double d = f.field(i, t_star, (k + 0.5) * h) - mean;
          acc += d * d * h;
        }
      }
      result.measured = std::sqrt(acc);
      result.pass = result.measured <= spec.expect.tolerance;
      detail << "||u(" << t_star << ") - mean||_2 = " << result.measured << " (mean " << mean
             << ")";
      break;
    }
    case ExpectationKind::ExpDecay: {
      const double l_max = spec.net.l_max();
      const double t_start = 2.0 * l_max;
      const int count = 24;
      TraceField f(spec.net, spec.signals, spec.data, t_start + count * l_max + 1.0);
      std::vector<std::pair<double, double>> samples;
      for (int k = 0; k < count; ++k) {
        const double t = t_start + k * l_max;
        samples.emplace_back(t, f.total_lp_norm(t, 2.0, opt.resolution));
      }
      const DecayFit fit = fit_decay(samples);
      result.measured = fit.gamma;
      const double floor_gamma = spec.expect.min_gamma;
      result.pass = fit.gamma > 0.0 && fit.residual < 0.1 &&
                    (floor_gamma <= 0.0 || fit.gamma >= 0.99 * floor_gamma);
      detail << "fitted gamma = " << fit.gamma << ", residual = " << fit.residual;
      break;
    }
  }
  result.detail = detail.str();
  return result;
}

}  // namespace ringnet
