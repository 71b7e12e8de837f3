#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "helpers.hpp"
#include "ringnet/coeff.hpp"

using namespace ringnet;

TEST_CASE("epsilon_factor closed forms") {
  const Network net = testutil::two_circle_irrational();  // damping [0.1, 0.4] on circle 1
  const MultiIndex origin(2);

  CHECK(epsilon_factor(0, origin, 0.0, 3.0, StepSignal::constant(0.0), net) == 1.0);

  // Always-active damping, x below a: full window of measure b - a.
  const double full = epsilon_factor(0, origin, 0.05, 3.0, StepSignal::constant(1.0), net);
  CHECK(full == doctest::Approx(std::exp(-0.3)));

  // x = b empties the window.
  CHECK(epsilon_factor(0, origin, 0.4, 3.0, StepSignal::constant(1.0), net) == 1.0);
  // Partial window [x, b] for a < x < b.
  CHECK(epsilon_factor(0, origin, 0.25, 3.0, StepSignal::constant(1.0), net) ==
        doctest::Approx(std::exp(-0.15)));
  // Undamped circle: empty window by convention.
  CHECK(epsilon_factor(1, origin, 0.3, 3.0, StepSignal::constant(1.0), net) == 1.0);

  CHECK_THROWS_AS(epsilon_factor(0, origin, -0.2, 3.0, StepSignal::constant(1.0), net),
                  std::invalid_argument);
  CHECK_THROWS_AS(epsilon_factor(0, origin, 1.2, 3.0, StepSignal::constant(1.0), net),
                  std::invalid_argument);

  // Raising the signal pointwise can only shrink the factor.
  for (double x : {0.0, 0.2, 0.35}) {
    const double weak = epsilon_factor(0, origin, x, 2.3, StepSignal::constant(0.3), net);
    const double strong = epsilon_factor(0, origin, x, 2.3, StepSignal::constant(0.8), net);
    CHECK(strong <= weak + 1e-15);
  }
}

TEST_CASE("build_beta recursions") {
  const Network net = testutil::two_circle_irrational();
  const BetaTable table = build_beta(net, 8);

  SUBCASE("base case is the transmission matrix") {
    const Eigen::MatrixXd& b0 = table.at(MultiIndex(2));
    CHECK((b0 - net.m).cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("one recursion step by hand") {
    // B(1_1)[i][j] = m_1j m_i1 = 1/4 for the averaging matrix.
    const Eigen::MatrixXd& b = table.at(MultiIndex({1, 0}));
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) CHECK(b(i, j) == doctest::Approx(0.25));
  }

  SUBCASE("second recursion holds on every populated point") {
    for (const auto& n : table.nodes()) {
      if (n.l1() == 0) continue;
      const Eigen::MatrixXd& lhs = table.at(n);
      for (int i = 0; i < net.n; ++i)
        for (int j = 0; j < net.n; ++j) {
          double rhs = 0.0;
          for (int k = 0; k < net.n; ++k) {
            if (n[static_cast<std::size_t>(k)] < 1) continue;  // zero by convention
            rhs += net.m(i, k) * table.at(n.minus_unit(static_cast<std::size_t>(k)))(k, j);
          }
          CHECK(lhs(i, j) == doctest::Approx(rhs).epsilon(1e-12));
        }
    }
  }

  SUBCASE("memory budget refusal") {
    CHECK_THROWS_AS(build_beta(net, 10000), std::length_error);
  }
}

TEST_CASE("build_theta reductions") {
  const Network net = testutil::two_circle_irrational();
  const double t = 5.0 * net.l_max();

  SUBCASE("inactive damping reproduces the undamped coefficients") {
    const ThetaTable theta = build_theta(net, testutil::constant_signals(2, 0.0), t);
    const BetaTable beta = build_beta_lattice(net, t);
    for (const auto& n : theta.nodes())
      CHECK((theta.at(n) - beta.at(n)).cwiseAbs().maxCoeff() <= 1e-15);
  }

  SUBCASE("always-active damping multiplies by the closed-form factor") {
    const ThetaTable theta = build_theta(net, testutil::constant_signals(2, 1.0), t);
    const BetaTable beta = build_beta_lattice(net, t);
    for (const auto& n : theta.nodes()) {
      double factor = 0.0;
      for (int k = 0; k < net.n_d; ++k) {
        const auto [a, b] = net.damping[static_cast<std::size_t>(k)];
        factor += n[static_cast<std::size_t>(k)] * (b - a);
      }
      const Eigen::MatrixXd expected = beta.at(n) * std::exp(-factor);
      CHECK((theta.at(n) - expected).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
}

TEST_CASE("theta_at") {
  const Network net = testutil::two_circle_irrational();
  const double t = 4.0;
  const auto signals = testutil::pe_then_ones(net, 2.0, 0.5, 7);
  const ThetaTable table = build_theta(net, signals, t);

  const MultiIndex n({1, 1});
  // x = L_j leaves the stored entry untouched.
  CHECK(theta_at(table, 0, 0, n, net.length(0), signals, net) == table.at(n)(0, 0));
  // Origin entries reduce to a damping factor times m_ij.
  const double at_origin = theta_at(table, 1, 0, MultiIndex(2), 0.0, signals, net);
  const double eps = epsilon_factor(0, MultiIndex(2), 0.0, t, signals[0], net);
  CHECK(at_origin == doctest::Approx(eps * net.m(1, 0)));
  // The interior factor never increases magnitude.
  for (double x : {0.0, 0.13, 0.31, 0.77})
    CHECK(std::abs(theta_at(table, 0, 0, n, x, signals, net)) <= std::abs(table.at(n)(0, 0)));

  CHECK_THROWS_AS(theta_at(table, 0, 0, MultiIndex({40, 40}), 0.0, signals, net),
                  std::out_of_range);
}

TEST_CASE("phi_k_set") {
  SUBCASE("K = 1 lists circles with a positive count") {
    const auto paths = phi_k_set(MultiIndex({2, 0, 1}), 1);
    REQUIRE(paths.size() == 2);
    CHECK(paths[0] == std::vector<int>{0});
    CHECK(paths[1] == std::vector<int>{2});
  }
  SUBCASE("n = (1,1), K = 2") {
    const auto paths = phi_k_set(MultiIndex({1, 1}), 2);
    REQUIRE(paths.size() == 2);
    CHECK(paths[0] == std::vector<int>{0, 1});
    CHECK(paths[1] == std::vector<int>{1, 0});
  }
  SUBCASE("concentrated index forces a single path") {
    const auto paths = phi_k_set(MultiIndex({3, 0}), 3);
    REQUIRE(paths.size() == 1);
    CHECK(paths[0] == std::vector<int>{0, 0, 0});
  }
  SUBCASE("brute force comparison") {
    const MultiIndex n({2, 1, 2});
    const int K = 3, N = 3;
    std::set<std::vector<int>> expected;
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b)
        for (int c = 0; c < N; ++c) {
          std::vector<int> v{a, b, c};
          std::vector<int> counts(3, 0);
          for (int s : v) ++counts[static_cast<std::size_t>(s)];
          bool ok = true;
          for (int j = 0; j < N; ++j)
            if (counts[static_cast<std::size_t>(j)] > n[static_cast<std::size_t>(j)]) ok = false;
          if (ok) expected.insert(v);
        }
    const auto paths = phi_k_set(n, K);
    CHECK(paths.size() == expected.size());
    for (const auto& v : paths) CHECK(expected.count(v) == 1);
  }
  SUBCASE("rejects K above the index mass") {
    CHECK_THROWS_AS(phi_k_set(MultiIndex({1, 1}), 3), std::invalid_argument);
    CHECK_THROWS_AS(phi_k_set(MultiIndex({1, 1}), 0), std::invalid_argument);
  }
}

TEST_CASE("K-step path sum agrees with the one-step table") {
  const Network net = testutil::two_circle_irrational();
  const double t = 5.0 * net.l_max();
  const auto signals = testutil::pe_then_ones(net, 2.0, 0.5, 3);
  const ThetaTable table = build_theta(net, signals, t);

  for (const auto& n : table.nodes()) {
    const long mass = n.l1();
    for (int K = 1; K <= std::min(4l, mass); ++K) {
      for (int i = 0; i < net.n; ++i)
        for (int j = 0; j < net.n; ++j) {
          const double direct = table.at(n)(i, j);
          const double kstep = theta_kstep(net, signals, i, j, n, t, K, table);
          CHECK(std::abs(direct - kstep) <= 1e-12 * std::max(1.0, std::abs(direct)));
        }
      CHECK(kstep_weight_sum(net, 0, n, K) <= 1.0 + 1e-12);
    }
  }
}
