#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "ringnet/oracle.hpp"
#include "ringnet/scenario.hpp"
#include "ringnet/solver.hpp"

using namespace ringnet;

TEST_CASE("recursive_trace short-time expression") {
  const Network net = testutil::two_circle_irrational();
  const InitialData data = testutil::bump_data(net);
  const auto signals = testutil::pe_then_ones(net, 2.0, 0.5, 11);

  for (double t : {0.2, 0.61, 0.97}) {
    for (int i = 0; i < 2; ++i) {
      double expected = 0.0;
      for (int j = 0; j < 2; ++j) {
        const auto [a, b] = net.damping[static_cast<std::size_t>(j)];
        const double lj = net.length(j);
        double damp = 1.0;
        if (b > a) {
          const double lo = std::max(0.0, t - lj + a);
          const double hi = std::min(t, t - lj + b);
          if (hi > lo) damp = std::exp(-signals[static_cast<std::size_t>(j)].integrate(lo, hi));
        }
        expected += net.m(i, j) * damp * data.eval(j, lj - t);
      }
      CHECK(recursive_trace(net, signals, data, i, t) == doctest::Approx(expected));
    }
  }
}

TEST_CASE("solver and recursive oracle agree on random samples") {
  std::mt19937_64 rng(17);

  SUBCASE("two circles") {
    const Network net = testutil::two_circle_irrational();
    const InitialData data = testutil::bump_data(net);
    const auto signals = testutil::pe_then_ones(net, 2.0, 0.5, 23);
    const double t_max = 10.0 * net.l_max();
    TraceField f(net, signals, data, t_max);
    for (int k = 0; k < 100; ++k) {
      const double t = t_max * testutil::uniform01(rng);
      const int i = static_cast<int>(rng() % 2);
      const double a = f.boundary_trace(i, t);
      const double b = recursive_trace(net, signals, data, i, t);
      CHECK(std::abs(a - b) <= 1e-10 * std::max({1.0, std::abs(a), std::abs(b)}));
    }
  }

  SUBCASE("three circles") {
    const Network net = testutil::three_circle_mixed(random_mixing_matrix(3, 5));
    const InitialData data = testutil::bump_data(net);
    const auto signals = testutil::pe_then_ones(net, 2.0, 0.5, 29);
    const double t_max = 8.0 * net.l_max();
    TraceField f(net, signals, data, t_max);
    for (int k = 0; k < 60; ++k) {
      const double t = t_max * testutil::uniform01(rng);
      const int i = static_cast<int>(rng() % 3);
      const double a = f.boundary_trace(i, t);
      const double b = recursive_trace(net, signals, data, i, t);
      CHECK(std::abs(a - b) <= 1e-10 * std::max({1.0, std::abs(a), std::abs(b)}));
    }
  }
}

TEST_CASE("always-damped unit data decays geometrically at revolution times") {
  Eigen::MatrixXd m(1, 1);
  m << 1.0;
  const Network net = Network::make({Length(1, 1, LengthTag::One)}, {{0.2, 0.7}}, m);
  const InitialData data = InitialData::constant(net, 1.0);
  const auto ones = testutil::constant_signals(1, 1.0);
  for (int k = 1; k <= 5; ++k) {
    const double expected = std::exp(-0.5 * k);
    CHECK(recursive_trace(net, ones, data, 0, static_cast<double>(k)) ==
          doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("repeated queries are identical") {
  const Network net = testutil::two_circle_irrational();
  const InitialData data = testutil::bump_data(net);
  const auto signals = testutil::pe_then_ones(net, 2.0, 0.5, 41);
  const double a = recursive_trace(net, signals, data, 0, 7.3);
  const double b = recursive_trace(net, signals, data, 0, 7.3);
  CHECK(a == b);
}

TEST_CASE("upwind scheme") {
  SUBCASE("unit CFL on one undamped circle is an exact shift") {
    Eigen::MatrixXd m(1, 1);
    m << 1.0;
    const Network net = Network::make({Length(1, 1, LengthTag::One)}, {}, m);
    const InitialData data = InitialData::single_bump(net, {0.2}, {0.8}, {1.0});
    auto state = make_upwind_state(net, data, 64);
    const auto initial = state.cells;
    const double dt = state.h[0];
    const auto zeros = testutil::constant_signals(1, 0.0);
    for (int s = 0; s < 64; ++s) upwind_step(state, net, zeros, dt);
    for (std::size_t c = 0; c < initial[0].size(); ++c)
      CHECK(state.cells[0][c] == doctest::Approx(initial[0][c]).epsilon(1e-12));
  }

  SUBCASE("mass is conserved per step for left-stochastic undamped networks") {
    const Network net = testutil::two_circle_irrational();
    const InitialData data = testutil::bump_data(net);
    auto state = make_upwind_state(net, data, 48);
    const auto zeros = testutil::constant_signals(2, 0.0);
    double mass = upwind_mass(state);
    const double dt = 0.9 * state.h[0];
    for (int s = 0; s < 40; ++s) {
      upwind_step(state, net, zeros, std::min(dt, state.h[0]));
      const double next = upwind_mass(state);
      CHECK(next == doctest::Approx(mass).epsilon(1e-10));
      mass = next;
    }
  }

  SUBCASE("CFL violation rejected") {
    const Network net = testutil::two_circle_irrational();
    auto state = make_upwind_state(net, testutil::bump_data(net), 16);
    CHECK_THROWS_AS(upwind_step(state, net, testutil::constant_signals(2, 0.0), 1.0),
                    std::invalid_argument);
  }

  SUBCASE("first-order convergence against the recursive oracle") {
    // Smooth (undamped) solution; the junction phase error needs a few
    // refinements before the first-order regime shows.
    const Network net = testutil::two_circle_irrational();
    const InitialData data = testutil::bump_data(net);
    const auto signals = testutil::constant_signals(2, 0.0);
    const double t_end = 2.3;

    auto error_at = [&](int cells) {
      auto state = make_upwind_state(net, data, cells);
      upwind_run(state, net, signals, t_end, 0.8);
      double err = 0.0, count = 0.0;
      for (int i = 0; i < net.n; ++i) {
        const double h = state.h[static_cast<std::size_t>(i)];
        for (std::size_t c = 0; c < state.cells[static_cast<std::size_t>(i)].size(); ++c) {
          const double x = (static_cast<double>(c) + 0.5) * h;
          const double exact = recursive_field(net, signals, data, i, t_end, x);
          err += std::abs(state.cells[static_cast<std::size_t>(i)][c] - exact);
          count += 1.0;
        }
      }
      return err / count;
    };

    const double e1 = error_at(512);
    const double e2 = error_at(1024);
    const double e3 = error_at(2048);
    const double order12 = std::log2(e1 / e2);
    const double order23 = std::log2(e2 / e3);
    CHECK(order12 >= 0.8);
    CHECK(order12 <= 1.2);
    CHECK(order23 >= 0.8);
    CHECK(order23 <= 1.2);
  }
}
