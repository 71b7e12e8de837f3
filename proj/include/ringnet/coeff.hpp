#pragma once

#include <Eigen/Dense>
#include <unordered_map>
#include <vector>

#include "ringnet/multi_index.hpp"
#include "ringnet/network.hpp"
#include "ringnet/signal.hpp"

namespace ringnet {

/// One-step damping factor exp(-int_I alpha_j) picked up while crossing
/// circle j, with I = [t - L(n) - L_j + max(x, a_j), t - L(n) - L_j + b_j].
/// Equals 1 when max(x, a_j) >= b_j (empty window); always in (0, 1].
double epsilon_factor(int j, const MultiIndex& n, double x, double t, const StepSignal& alpha_j,
                      const Network& net);

/// Undamped lattice coefficients B(n)[i][j], built anti-diagonal by
/// anti-diagonal from B(0) = M.
class BetaTable {
 public:
  BetaTable() = default;

  bool contains(const MultiIndex& n) const { return index_.count(n) > 0; }
  const Eigen::MatrixXd& at(const MultiIndex& n) const;
  const std::vector<MultiIndex>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }

 private:
  std::vector<MultiIndex> nodes_;
  std::vector<Eigen::MatrixXd> mats_;
  std::unordered_map<MultiIndex, std::size_t, MultiIndexHash> index_;

  friend BetaTable build_beta(const Network&, long, std::size_t);
  friend BetaTable build_beta_lattice(const Network&, double, std::size_t);
};

BetaTable build_beta(const Network& net, long horizon_l1,
                     std::size_t budget = LatticeStream::kDefaultBudget);

/// Beta coefficients on the time-horizon lattice {L(n) <= t}; same recursion,
/// same node set as a ThetaTable at horizon t.
BetaTable build_beta_lattice(const Network& net, double t,
                             std::size_t budget = LatticeStream::kDefaultBudget);

/// Damped lattice coefficients for one evaluation time t:
/// entry(n)[i][j] is the weight attached to paths that reach the junction
/// through circle j after the traversals counted by n.
class ThetaTable {
 public:
  ThetaTable() = default;

  double horizon() const { return horizon_; }
  bool contains(const MultiIndex& n) const { return index_.count(n) > 0; }
  const Eigen::MatrixXd& at(const MultiIndex& n) const;
  const std::vector<MultiIndex>& nodes() const { return nodes_; }
  double node_lattice_value(std::size_t k) const { return node_l_[k]; }
  std::size_t size() const { return nodes_.size(); }

 private:
  double horizon_ = 0.0;
  std::vector<MultiIndex> nodes_;      // nondecreasing L(n), lexicographic ties
  std::vector<double> node_l_;
  std::vector<Eigen::MatrixXd> mats_;
  std::unordered_map<MultiIndex, std::size_t, MultiIndexHash> index_;

  friend ThetaTable build_theta(const Network&, const std::vector<StepSignal>&, double,
                                std::size_t);
};

/// Populates entry(n) for every n with L(n) <= t, processed in nondecreasing
/// L(n) order so each n - 1_k is available when needed. signals must have one
/// entry per circle (constant 1 for undamped circles).
ThetaTable build_theta(const Network& net, const std::vector<StepSignal>& signals, double t,
                       std::size_t budget = LatticeStream::kDefaultBudget);

/// Coefficient at interior position x: epsilon(j, n, x, t) * entry(n)[i][j].
double theta_at(const ThetaTable& table, int i, int j, const MultiIndex& n, double x,
                const std::vector<StepSignal>& signals, const Network& net);

/// Paths v in [0, N)^K whose per-circle visit counts fit under n, in
/// lexicographic order.
std::vector<std::vector<int>> phi_k_set(const MultiIndex& n, int K);

/// K-step path-sum evaluation of entry(n)[i][j]; agrees with the one-step
/// recursion for every admissible K and serves as its cross-check.
double theta_kstep(const Network& net, const std::vector<StepSignal>& signals, int i, int j,
                   const MultiIndex& n, double t, int K, const ThetaTable& table);

/// sum over paths of |m_{v1 j} prod m_{vs vs-1}|; at most 1 when the
/// transmission matrix has unit column-sum norm.
double kstep_weight_sum(const Network& net, int j, const MultiIndex& n, int K);

}  // namespace ringnet
