#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "ringnet/oracle.hpp"
#include "ringnet/scenario.hpp"
#include "ringnet/solver.hpp"

using namespace ringnet;

namespace {

Network single_circle(double b_damp = 0.0) {
  Eigen::MatrixXd m(1, 1);
  m << 1.0;
  if (b_damp > 0.0)
    return Network::make({Length(1, 1, LengthTag::One)}, {{0.2, 0.2 + b_damp}}, m);
  return Network::make({Length(1, 1, LengthTag::One)}, {}, m);
}

InitialData one_bump(const Network& net, double lo, double hi) {
  return InitialData::single_bump(net, {lo}, {hi}, {1.0});
}

}  // namespace

TEST_CASE("check_compatibility") {
  const Network net = testutil::two_circle_irrational();

  SUBCASE("constant data under the averaging matrix") {
    CHECK(check_compatibility(InitialData::constant(net, 3.7), net) == doctest::Approx(0.0));
  }
  SUBCASE("interior bumps vanish at both endpoints") {
    CHECK(check_compatibility(testutil::bump_data(net), net) == doctest::Approx(0.0));
  }
  SUBCASE("one circle at level 1, the other at 0") {
    InitialData data(net, {{Segment::poly(0.0, net.length(0), {1.0})},
                           {Segment::poly(0.0, net.length(1), {0.0})}});
    CHECK(check_compatibility(data, net) == doctest::Approx(0.5));
  }
}

TEST_CASE("boundary_trace short-time expression") {
  const Network net = testutil::two_circle_irrational();
  const InitialData data = testutil::bump_data(net);
  TraceField f(net, testutil::constant_signals(2, 0.0), data, 2.0);

  for (double t : {0.3, 0.77, 0.99}) {
    for (int i = 0; i < 2; ++i) {
      double expected = 0.0;
      for (int j = 0; j < 2; ++j) expected += net.m(i, j) * data.eval(j, net.length(j) - t);
      CHECK(f.boundary_trace(i, t) == doctest::Approx(expected).epsilon(1e-13));
    }
  }
}

TEST_CASE("single undamped circle rotates the data") {
  const Network net = single_circle();
  const InitialData data = one_bump(net, 0.3, 0.8);
  TraceField f(net, {StepSignal::constant(0.0)}, data, 6.0);

  for (double t : {0.41, 1.0 + 0.13, 2.431, 5.77}) {
    const double frac = t - std::floor(t);
    CHECK(f.boundary_trace(0, t) == doctest::Approx(data.eval(0, 1.0 - frac)).epsilon(1e-12));
  }

  // Norms are preserved by the rotation.
  const double res = 2048;
  for (double p : {1.0, 2.0}) {
    const double base = f.lp_norm(0, 0.0, p, res);
    for (double t : {0.9, 2.35})
      CHECK(f.lp_norm(0, t, p, res) == doctest::Approx(base).epsilon(1e-8));
  }
  const double sup0 = f.lp_norm(0, 0.0, TraceField::infinity(), res);
  CHECK(f.lp_norm(0, 1.7, TraceField::infinity(), res) == doctest::Approx(sup0).epsilon(1e-6));
}

TEST_CASE("field basics") {
  const Network net = testutil::two_circle_irrational();
  const InitialData data = testutil::bump_data(net);
  const auto signals = testutil::pe_then_ones(net, 2.0, 0.5, 21);
  TraceField f(net, signals, data, 8.0);

  SUBCASE("t = 0 reproduces the data") {
    for (int i = 0; i < 2; ++i)
      for (double x : {0.1, 0.5, 0.9})
        CHECK(f.field(i, 0.0, x * net.length(i)) ==
              doctest::Approx(data.eval(i, x * net.length(i))));
  }
  SUBCASE("undamped circles carry no damping factor") {
    for (double t : {0.9, 3.3})
      for (double x : {0.2, 0.8}) {
        const double xx = x * net.length(1);
        const double base = (t <= xx) ? data.eval(1, xx - t) : f.boundary_trace(1, t - xx);
        CHECK(f.field(1, t, xx) == base);
      }
  }
  SUBCASE("junction identity") {
    for (double t : {0.51, 1.37, 2.93, 5.81, 7.13}) {
      for (int i = 0; i < 2; ++i) {
        double rhs = 0.0;
        for (int j = 0; j < 2; ++j) rhs += net.m(i, j) * f.field(j, t, net.length(j));
        const double lhs = f.boundary_trace(i, t);
        CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(lhs)));
      }
    }
  }
}

TEST_CASE("always-active damping contracts by exp(-(b-a)) per revolution") {
  const Network net = single_circle(0.5);  // damping [0.2, 0.7]
  const InitialData data = one_bump(net, 0.3, 0.9);
  TraceField f(net, {StepSignal::constant(1.0)}, data, 6.0);

  double prev = std::sqrt(f.circle_integral_pow(0, 0.4, 2, 512));
  for (int k = 1; k <= 4; ++k) {
    const double cur = std::sqrt(f.circle_integral_pow(0, 0.4 + k, 2, 512));
    CHECK(cur / prev == doctest::Approx(std::exp(-0.5)).epsilon(1e-10));
    prev = cur;
  }
}

TEST_CASE("lp_norm of polynomial data matches the closed form at t = 0") {
  const Network net = single_circle();
  const std::vector<double> c{1.0, 2.0, -3.0};
  InitialData data(net, {{Segment::poly(0.0, 1.0, c)}});
  TraceField f(net, {StepSignal::constant(0.0)}, data, 1.0);

  // Exact integral of p^2 by coefficient convolution.
  std::vector<double> sq(2 * c.size() - 1, 0.0);
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j) sq[i + j] += c[i] * c[j];
  double exact = 0.0;
  for (std::size_t k = 0; k < sq.size(); ++k) exact += sq[k] / static_cast<double>(k + 1);

  CHECK(f.lp_norm(0, 0.0, 2.0, 4096) == doctest::Approx(std::sqrt(exact)).epsilon(1e-8));
  CHECK(f.lp_norm(0, 0.0, 2.0, 64) == doctest::Approx(std::sqrt(exact)).epsilon(1e-3));
  CHECK_THROWS_AS(f.lp_norm(0, 0.0, 2.0, 32), std::invalid_argument);
}

TEST_CASE("spatial norm is dominated by the trace window norm") {
  const Network net = testutil::two_circle_irrational();
  const InitialData data = testutil::bump_data(net);
  const auto signals = testutil::pe_then_ones(net, 2.0, 0.5, 5);
  TraceField f(net, signals, data, 5.0);

  const double t = 3.1;
  for (double p : {1.0, 2.0}) {
    const double damped_lhs = f.lp_norm(0, t, p, 512);
    const double damped_rhs = trace_window_lp(f, 0, t, p, 512);
    CHECK(damped_lhs <= damped_rhs + 1e-6);

    // Equality on the undamped circle (t >= L_2).
    const double free_lhs = f.lp_norm(1, t, p, 512);
    const double free_rhs = trace_window_lp(f, 1, t, p, 512);
    CHECK(free_lhs == doctest::Approx(free_rhs).epsilon(1e-6));
  }
}

TEST_CASE("mass conservation and L1 contraction") {
  SUBCASE("left-stochastic undamped network conserves mass") {
    const Network net = testutil::two_circle_irrational();
    TraceField f(net, testutil::constant_signals(2, 0.0), testutil::bump_data(net), 6.0);
    double mass0 = 0.0;
    for (int i = 0; i < 2; ++i) mass0 += f.circle_integral_pow(i, 0.0, 1, 512);
    for (double t : {0.9, 2.2, 4.8}) {
      double mass = 0.0;
      for (int i = 0; i < 2; ++i) mass += f.circle_integral_pow(i, t, 1, 512);
      CHECK(std::abs(mass - mass0) <= 1e-10 * std::max(1.0, std::abs(mass0)));
    }
  }
  SUBCASE("unit-norm transmission keeps the total L1 norm nonincreasing") {
    const Network net = testutil::two_circle_irrational();
    const auto signals = testutil::pe_then_ones(net, 2.0, 0.5, 17);
    TraceField f(net, signals, testutil::bump_data(net), 8.0);
    double prev = f.total_lp_norm(0.0, 1.0, 256);
    for (double t : {1.0, 2.5, 4.0, 6.0, 7.5}) {
      const double cur = f.total_lp_norm(t, 1.0, 256);
      CHECK(cur <= prev + 1e-6);
      prev = cur;
    }
  }
}

TEST_CASE("restarting the problem mid-flight reproduces the direct evaluation") {
  const Network net = testutil::two_circle_irrational();
  const InitialData data = testutil::bump_data(net);
  const auto signals = testutil::pe_then_ones(net, 2.0, 0.5, 31);
  TraceField f(net, signals, data, 4.0);

  const double s = 1.3;
  std::vector<StepSignal> shifted;
  for (const auto& sig : signals) shifted.push_back(sig.shifted(s));
  const auto restarted = [&](int j, double x) { return f.field(j, s, x); };

  for (double t : {1.9, 2.6, 3.4})
    for (int i = 0; i < 2; ++i) {
      const double direct = f.boundary_trace(i, t);
      const double via_restart = recursive_trace_fn(net, shifted, restarted, i, t - s);
      CHECK(std::abs(direct - via_restart) <= 1e-9 * std::max(1.0, std::abs(direct)));
    }
}

TEST_CASE("domain guards") {
  const Network net = testutil::two_circle_irrational();
  TraceField f(net, testutil::constant_signals(2, 0.0), testutil::bump_data(net), 2.0);
  CHECK_THROWS_AS(f.boundary_trace(0, 3.0), std::out_of_range);
  CHECK_THROWS_AS(f.field(0, 1.0, 2.0), std::out_of_range);
}
