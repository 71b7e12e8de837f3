#include "ringnet/coeff.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace ringnet {

double epsilon_factor(int j, const MultiIndex& n, double x, double t, const StepSignal& alpha_j,
                      const Network& net) {
  const double lj = net.length(j);
  if (x < -1e-12 * std::max(1.0, lj) || x > lj * (1.0 + 1e-12))
    throw std::invalid_argument("epsilon_factor: x outside [0, L_j]");
  const auto [a, b] = net.damping[static_cast<std::size_t>(j)];
  const double base = t - lattice_value(n, net) - lj;
  const double lo = base + std::max(x, a);
  const double hi = base + b;
  if (lo >= hi) return 1.0;
  return std::exp(-alpha_j.integrate(lo, hi));
}

const Eigen::MatrixXd& BetaTable::at(const MultiIndex& n) const {
  const auto it = index_.find(n);
  if (it == index_.end()) throw std::out_of_range("BetaTable: index not populated");
  return mats_[it->second];
}

const Eigen::MatrixXd& ThetaTable::at(const MultiIndex& n) const {
  const auto it = index_.find(n);
  if (it == index_.end()) throw std::out_of_range("ThetaTable: index out of horizon");
  return mats_[it->second];
}

namespace {

// B(n)[i][j] = sum_{k : n_k >= 1} m_kj B(n - 1_k)[i][k], B(0) = M.
Eigen::MatrixXd beta_step(const Network& net, const MultiIndex& n, const BetaTable& table) {
  const int N = net.n;
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(N, N);
  for (int k = 0; k < N; ++k) {
    if (n[static_cast<std::size_t>(k)] < 1) continue;
    const Eigen::MatrixXd& prev = table.at(n.minus_unit(static_cast<std::size_t>(k)));
    out.noalias() += prev.col(k) * net.m.row(k);
  }
  return out;
}

}  // namespace

BetaTable build_beta(const Network& net, long horizon_l1, std::size_t budget) {
  if (horizon_l1 < 0) throw std::invalid_argument("build_beta: negative horizon");

  // Estimate the node count binom(horizon + N, N) against the budget.
  double count = 1.0;
  for (int k = 1; k <= net.n; ++k)
    count *= static_cast<double>(horizon_l1 + k) / static_cast<double>(k);
  if (count > static_cast<double>(budget))
    throw std::length_error("build_beta: horizon exceeds lattice budget");

  BetaTable table;
  // Anti-diagonal by anti-diagonal.
  std::vector<MultiIndex> diag{MultiIndex(static_cast<std::size_t>(net.n))};
  for (long level = 0; level <= horizon_l1; ++level) {
    std::vector<MultiIndex> next;
    for (const MultiIndex& n : diag) {
      Eigen::MatrixXd mat = (level == 0) ? net.m : beta_step(net, n, table);
      table.index_.emplace(n, table.nodes_.size());
      table.nodes_.push_back(n);
      table.mats_.push_back(std::move(mat));
      // Children on the next anti-diagonal, generated once each.
      std::size_t first_nonzero = n.dim();
      for (std::size_t k = 0; k < n.dim(); ++k)
        if (n[k] > 0) {
          first_nonzero = k;
          break;
        }
      if (level < horizon_l1)
        for (std::size_t k = 0; k <= std::min(first_nonzero, n.dim() - 1); ++k)
          next.push_back(n.plus_unit(k));
    }
    std::sort(next.begin(), next.end());
    diag = std::move(next);
  }
  return table;
}

BetaTable build_beta_lattice(const Network& net, double t, std::size_t budget) {
  BetaTable table;
  LatticeStream stream(net, t, -1, budget);
  while (auto n = stream.next()) {
    Eigen::MatrixXd mat = (n->l1() == 0) ? net.m : beta_step(net, *n, table);
    table.index_.emplace(*n, table.nodes_.size());
    table.nodes_.push_back(std::move(*n));
    table.mats_.push_back(std::move(mat));
  }
  return table;
}

ThetaTable build_theta(const Network& net, const std::vector<StepSignal>& signals, double t,
                       std::size_t budget) {
  if (t < 0.0) throw std::invalid_argument("build_theta: negative horizon");
  if (static_cast<int>(signals.size()) != net.n)
    throw std::invalid_argument("build_theta: need one signal per circle");

  ThetaTable table;
  table.horizon_ = t;
  const int N = net.n;
  LatticeStream stream(net, t, -1, budget);
  while (auto opt = stream.next()) {
    MultiIndex n = std::move(*opt);
    const double ln = lattice_value(n, net);
    Eigen::MatrixXd mat;
    if (n.l1() == 0) {
      mat = net.m;
    } else {
      mat = Eigen::MatrixXd::Zero(N, N);
      for (int k = 0; k < N; ++k) {
        if (n[static_cast<std::size_t>(k)] < 1) continue;
        const MultiIndex prev = n.minus_unit(static_cast<std::size_t>(k));
        // Damping picked up on the step through circle k; the window is
        // [t - L(n) + a_k, t - L(n) + b_k]. Shared with the K-step evaluator
        // so the two routes agree to rounding.
        const double eps =
            epsilon_factor(k, prev, 0.0, t, signals[static_cast<std::size_t>(k)], net);
        mat.noalias() += eps * (table.at(prev).col(k) * net.m.row(k));
      }
    }
    table.index_.emplace(n, table.nodes_.size());
    table.nodes_.push_back(std::move(n));
    table.node_l_.push_back(ln);
    table.mats_.push_back(std::move(mat));
  }
  return table;
}

double theta_at(const ThetaTable& table, int i, int j, const MultiIndex& n, double x,
                const std::vector<StepSignal>& signals, const Network& net) {
  const Eigen::MatrixXd& mat = table.at(n);
  const double eps =
      epsilon_factor(j, n, x, table.horizon(), signals[static_cast<std::size_t>(j)], net);
  return eps * mat(i, j);
}

std::vector<std::vector<int>> phi_k_set(const MultiIndex& n, int K) {
  if (K < 1) throw std::invalid_argument("phi_k_set: K must be positive");
  if (n.l1() < K) throw std::invalid_argument("phi_k_set: K exceeds |n|_1");
  const int N = static_cast<int>(n.dim());

  std::vector<std::vector<int>> out;
  std::vector<int> path(static_cast<std::size_t>(K), 0);
  std::vector<int> used(static_cast<std::size_t>(N), 0);
  // Depth-first in lexicographic order; prune on multiplicity overflow.
  std::function<void(int)> rec = [&](int depth) {
    if (depth == K) {
      out.push_back(path);
      return;
    }
    for (int v = 0; v < N; ++v) {
      if (used[static_cast<std::size_t>(v)] >= n[static_cast<std::size_t>(v)]) continue;
      path[static_cast<std::size_t>(depth)] = v;
      ++used[static_cast<std::size_t>(v)];
      rec(depth + 1);
      --used[static_cast<std::size_t>(v)];
    }
  };
  rec(0);
  return out;
}

double theta_kstep(const Network& net, const std::vector<StepSignal>& signals, int i, int j,
                   const MultiIndex& n, double t, int K, const ThetaTable& table) {
  const auto paths = phi_k_set(n, K);
  const MultiIndex zero(n.dim());
  double sum = 0.0;
  for (const auto& v : paths) {
    double weight = net.m(v[0], j);
    for (int s = 1; s < K; ++s)
      weight *= net.m(v[static_cast<std::size_t>(s)], v[static_cast<std::size_t>(s - 1)]);

    MultiIndex rest = n;
    double decay = 1.0;
    for (int s = 0; s < K; ++s) {
      const int vs = v[static_cast<std::size_t>(s)];
      rest = rest.minus_unit(static_cast<std::size_t>(vs));
      decay *= epsilon_factor(vs, rest, 0.0, t, signals[static_cast<std::size_t>(vs)], net);
    }
    sum += weight * decay * table.at(rest)(i, v[static_cast<std::size_t>(K - 1)]);
  }
  return sum;
}

double kstep_weight_sum(const Network& net, int j, const MultiIndex& n, int K) {
  const auto paths = phi_k_set(n, K);
  double sum = 0.0;
  for (const auto& v : paths) {
    double weight = net.m(v[0], j);
    for (int s = 1; s < K; ++s)
      weight *= net.m(v[static_cast<std::size_t>(s)], v[static_cast<std::size_t>(s - 1)]);
    sum += std::abs(weight);
  }
  return sum;
}

}  // namespace ringnet
