#pragma once

#include <random>
#include <vector>

#include "ringnet/initial_data.hpp"
#include "ringnet/network.hpp"
#include "ringnet/signal.hpp"

namespace testutil {

inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline Eigen::MatrixXd half_ones() {
  Eigen::MatrixXd m(2, 2);
  m << 0.5, 0.5, 0.5, 0.5;
  return m;
}

/// N=2, L = (1, sqrt2), damping [0.1, 0.4] on circle 1, M = half ones.
inline ringnet::Network two_circle_irrational() {
  using namespace ringnet;
  return Network::make({Length(1, 1, LengthTag::One), Length(1, 1, LengthTag::Sqrt2)},
                       {{0.1, 0.4}}, half_ones());
}

/// N=3, L = (1, sqrt2, golden), damping on circles 1 and 2.
inline ringnet::Network three_circle_mixed(const Eigen::MatrixXd& m) {
  using namespace ringnet;
  return Network::make({Length(1, 1, LengthTag::One), Length(1, 1, LengthTag::Sqrt2),
                        Length(1, 1, LengthTag::Golden)},
                       {{0.1, 0.5}, {0.3, 0.9}}, m);
}

inline std::vector<ringnet::StepSignal> constant_signals(int n, double value) {
  std::vector<ringnet::StepSignal> s;
  for (int i = 0; i < n; ++i) s.push_back(ringnet::StepSignal::constant(value));
  return s;
}

inline std::vector<ringnet::StepSignal> pe_then_ones(const ringnet::Network& net, double T,
                                                     double mu, std::uint64_t seed) {
  std::vector<ringnet::StepSignal> s;
  for (int i = 0; i < net.n_d; ++i)
    s.push_back(ringnet::make_random_pe(T, mu, seed + 977u * static_cast<std::uint64_t>(i)));
  while (static_cast<int>(s.size()) < net.n) s.push_back(ringnet::StepSignal::constant(1.0));
  return s;
}

/// One bump per circle, strictly inside, heights staggered.
inline ringnet::InitialData bump_data(const ringnet::Network& net) {
  std::vector<double> lo, hi, h;
  for (int i = 0; i < net.n; ++i) {
    const double li = net.length(i);
    lo.push_back(0.2 * li + 0.03 * i);
    hi.push_back(0.7 * li + 0.02 * i);
    h.push_back(1.0 + 0.25 * i);
  }
  return ringnet::InitialData::single_bump(net, lo, hi, h);
}

}  // namespace testutil
