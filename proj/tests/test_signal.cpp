#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "ringnet/signal.hpp"

using namespace ringnet;

TEST_CASE("integrate on constants and the escape signal") {
  CHECK(StepSignal::constant(1.0).integrate(0.0, 2.5) == doctest::Approx(2.5));
  CHECK(StepSignal::constant(0.5).integrate(-1.0, 1.0) == doctest::Approx(1.0));
  CHECK(StepSignal::constant(1.0).integrate(2.0, 1.0) == 0.0);

  // Escape signal on the unit circle with b = 1/2: on-window [0, 1/4].
  const StepSignal esc = make_single_circle_escape(1.0, 0.5);
  CHECK(esc.integrate(0.0, 1.0) == doctest::Approx(0.25));
  CHECK(esc.value_at(0.1) == 1.0);
  CHECK(esc.value_at(0.3) == 0.0);
}

TEST_CASE("integrate additivity and periodic translation") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const StepSignal s = make_random_pe(2.0, 0.5, 1000 + trial);
    const double a = -8.0 + 16.0 * testutil::uniform01(rng);
    const double b = a + 6.0 * testutil::uniform01(rng);
    const double c = 0.5 * (a + b);
    CHECK(s.integrate(a, b) ==
          doctest::Approx(s.integrate(a, c) + s.integrate(c, b)).epsilon(1e-13));
    CHECK(s.integrate(a + s.period(), b + s.period()) ==
          doctest::Approx(s.integrate(a, b)).epsilon(1e-13));
  }
}

TEST_CASE("verify_pe") {
  SUBCASE("constant one") {
    const auto w = verify_pe(StepSignal::constant(1.0), 3.0, 1.0);
    CHECK(w.is_pe);
    CHECK(w.worst_integral == doctest::Approx(3.0));
  }
  SUBCASE("escape signal budget (L - b)/2") {
    const auto w = verify_pe(make_single_circle_escape(1.0, 0.5), 1.0, 0.25);
    CHECK(w.is_pe);
    CHECK(w.worst_integral == doctest::Approx(0.25));
  }
  SUBCASE("periodized two-circle escape signal") {
    const double ell = 1.0;
    const auto alpha = make_two_circle_pe_escape(ell, 0.0, 0.25);
    const auto w = verify_pe(alpha, ell, 0.25);  // window 4*ell0, budget ell0
    CHECK(w.is_pe);
    CHECK(w.worst_integral == doctest::Approx(0.25));
  }
  SUBCASE("rejects T < mu") {
    CHECK_THROWS_AS(verify_pe(StepSignal::constant(1.0), 0.5, 1.0), std::invalid_argument);
  }
  SUBCASE("window minimum is genuine: off-block makes small windows fail") {
    const StepSignal s(2.0, {0.0, 1.0}, {1.0, 0.0});
    const auto w = verify_pe(s, 1.0, 0.5);
    CHECK_FALSE(w.is_pe);  // the window [1, 2] carries zero integral
    CHECK(w.worst_integral == doctest::Approx(0.0));
  }
}

TEST_CASE("verified PE implies every window is above budget") {
  const double T = 2.0, mu = 0.5;
  const StepSignal s = make_random_pe(T, mu, 99);
  REQUIRE(verify_pe(s, T, mu).is_pe);
  std::mt19937_64 rng(4);
  for (int k = 0; k < 10000; ++k) {
    const double t = -5.0 * T + 10.0 * T * testutil::uniform01(rng);
    CHECK(s.integrate(t, t + T) >= mu - 1e-12);
  }
}

TEST_CASE("pointwise domination is monotone in the worst window") {
  const StepSignal lo(1.0, {0.0, 0.3, 0.6}, {0.2, 0.7, 0.1});
  const StepSignal hi(1.0, {0.0, 0.3, 0.6}, {0.4, 0.9, 0.3});
  const auto wl = verify_pe(lo, 0.8, 0.05);
  const auto wh = verify_pe(hi, 0.8, 0.05);
  CHECK(wl.worst_integral <= wh.worst_integral + 1e-14);
}

TEST_CASE("make_single_circle_escape") {
  const StepSignal s = make_single_circle_escape(1.0, 0.5);
  CHECK(s.period_integral() == doctest::Approx(0.25));

  const StepSignal tiny = make_single_circle_escape(1.0, 1e-9);
  CHECK(tiny.period_integral() == doctest::Approx(0.5).epsilon(1e-6));

  for (double b : {0.1, 0.37, 0.9})
    CHECK(make_single_circle_escape(1.0, b).period_integral() ==
          doctest::Approx(0.5 * (1.0 - b)));

  CHECK_THROWS_AS(make_single_circle_escape(1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_single_circle_escape(1.0, 1.5), std::invalid_argument);
}

TEST_CASE("make_two_circle_pe_escape") {
  const double ell = 1.0;
  const StepSignal s = make_two_circle_pe_escape(ell, 0.0, 0.25);
  // Zero exactly on [0.5, 1) u [0, 0.25): on-time 1/4 per period.
  CHECK(s.period_integral() == doctest::Approx(0.25));
  CHECK(s.value_at(0.1) == 0.0);
  CHECK(s.value_at(0.3) == 1.0);
  CHECK(s.value_at(0.7) == 0.0);
  CHECK(s.value_at(-0.4) == 0.0);  // periodic extension, {-0.4} = 0.6

  CHECK(verify_pe(s, 1.0, 0.25).is_pe);
  CHECK_THROWS_AS(make_two_circle_pe_escape(1.0, 0.0, 0.3), std::invalid_argument);

  // Interior damping window, no wrap in the zero set.
  const StepSignal s2 = make_two_circle_pe_escape(1.0, 0.6, 0.8);
  CHECK(s2.value_at(0.15) == 0.0);  // inside [0.1, 0.8]
  CHECK(s2.value_at(0.9) == 1.0);
  CHECK(s2.period_integral() == doctest::Approx(0.3));
}

TEST_CASE("make_random_pe") {
  SUBCASE("full duty forces the constant signal") {
    const StepSignal s = make_random_pe(2.0, 2.0, 5);
    CHECK(s.is_constant());
    CHECK(s.value_at(0.3) == 1.0);
  }
  SUBCASE("deterministic in the seed") {
    const StepSignal a = make_random_pe(2.0, 0.5, 42);
    const StepSignal b = make_random_pe(2.0, 0.5, 42);
    REQUIRE(a.breakpoints().size() == b.breakpoints().size());
    for (std::size_t k = 0; k < a.breakpoints().size(); ++k) {
      CHECK(a.breakpoints()[k] == b.breakpoints()[k]);
      CHECK(a.values()[k] == b.values()[k]);
    }
  }
  SUBCASE("every sample passes the embedded verifier") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const StepSignal s = make_random_pe(1.7, 0.4, seed);
      CHECK(verify_pe(s, 1.7, 0.4).is_pe);
    }
  }
}

TEST_CASE("shifted signal evaluates the translated function") {
  const StepSignal s = make_random_pe(2.0, 0.5, 11);
  const StepSignal sh = s.shifted(0.77);
  std::mt19937_64 rng(13);
  for (int k = 0; k < 200; ++k) {
    const double t = -5.0 + 10.0 * testutil::uniform01(rng);
    CHECK(sh.value_at(t) == doctest::Approx(s.value_at(t + 0.77)));
  }
  CHECK(sh.integrate(0.0, 1.3) == doctest::Approx(s.integrate(0.77, 2.07)).epsilon(1e-13));
}
