#include "ringnet/network.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

namespace ringnet {

double tag_value(LengthTag tag) {
  switch (tag) {
    case LengthTag::One:
      return 1.0;
    case LengthTag::Sqrt2:
      return std::sqrt(2.0);
    case LengthTag::Golden:
      return 0.5 * (1.0 + std::sqrt(5.0));
  }
  return 1.0;
}

std::string tag_name(LengthTag tag) {
  switch (tag) {
    case LengthTag::One:
      return "ONE";
    case LengthTag::Sqrt2:
      return "SQRT2";
    case LengthTag::Golden:
      return "GOLDEN";
  }
  return "ONE";
}

std::optional<LengthTag> tag_from_name(const std::string& name) {
  if (name == "ONE") return LengthTag::One;
  if (name == "SQRT2") return LengthTag::Sqrt2;
  if (name == "GOLDEN") return LengthTag::Golden;
  return std::nullopt;
}

double Network::l_min() const {
  double v = lengths.front().value();
  for (const auto& l : lengths) v = std::min(v, l.value());
  return v;
}

double Network::l_max() const {
  double v = lengths.front().value();
  for (const auto& l : lengths) v = std::max(v, l.value());
  return v;
}

Network Network::make(std::vector<Length> lengths, std::vector<std::pair<double, double>> damped,
                      Eigen::MatrixXd m) {
  Network net;
  net.n = static_cast<int>(lengths.size());
  net.n_d = static_cast<int>(damped.size());
  net.lengths = std::move(lengths);
  net.damping = std::move(damped);
  for (int i = net.n_d; i < net.n; ++i) {
    const double li = net.length(i);
    net.damping.emplace_back(li, li);
  }
  net.m = std::move(m);
  return net;
}

ValidationReport validate_network(const Network& net) {
  ValidationReport report;
  auto flag = [&report](const std::string& msg) { report.violations.push_back(msg); };

  if (net.n < 1) flag("circle count must be positive");
  if (net.n_d < 0 || net.n_d > net.n) flag("damped count out of range");
  if (static_cast<int>(net.lengths.size()) != net.n) flag("lengths size mismatch");
  if (static_cast<int>(net.damping.size()) != net.n) flag("damping size mismatch");
  if (net.m.rows() != net.n || net.m.cols() != net.n) flag("matrix shape mismatch");
  if (!report.ok()) return report;

  for (int i = 0; i < net.n; ++i) {
    const auto [a, b] = net.damping[static_cast<std::size_t>(i)];
    const double li = net.length(i);
    std::ostringstream where;
    where << "circle " << (i + 1) << ": ";
    if (i < net.n_d) {
      if (!(0.0 <= a)) flag(where.str() + "damping start below 0");
      if (!(a < b)) flag(where.str() + "a_i < b_i violated");
      if (!(b <= li + 1e-15 * li)) flag(where.str() + "damping end beyond circle length");
    } else {
      if (a != li || b != li) flag(where.str() + "undamped convention a_i = b_i = L_i violated");
    }
  }
  return report;
}

double l1_norm(const Eigen::MatrixXd& m) {
  return m.cwiseAbs().colwise().sum().maxCoeff();
}

HypothesisReport check_hypotheses(const Network& net, double T, double mu) {
  if (!(mu > 0.0) || T < mu) throw std::invalid_argument("check_hypotheses: need T >= mu > 0");

  HypothesisReport report;
  report.l1_norm = l1_norm(net.m);
  report.mixing_ok = (net.m.cwiseAbs().minCoeff() > 0.0);

  for (int i = 0; i < net.n && !report.irrational_pair; ++i)
    for (int j = 0; j < net.n; ++j)
      if (net.lengths[static_cast<std::size_t>(i)].tag !=
          net.lengths[static_cast<std::size_t>(j)].tag) {
        report.irrational_pair = std::make_pair(i + 1, j + 1);
        break;
      }

  if (!report.irrational_pair) {
    // All ratios rational: look for a pair meeting the denominator threshold.
    RationalAlternative best;
    bool have = false;
    for (int j = 0; j < net.n_d; ++j) {
      const auto [a, b] = net.damping[static_cast<std::size_t>(j)];
      const double lj = net.length(j);
      const double threshold =
          3.0 * lj * (std::max(2.0 * T / (mu * (b - a)), 1.0 / T) + 1.0 / T);
      for (int i = 0; i < net.n; ++i) {
        if (i == j) continue;
        const auto ratio = Length::ratio(net.lengths[static_cast<std::size_t>(i)],
                                         net.lengths[static_cast<std::size_t>(j)]);
        if (!ratio) continue;
        RationalAlternative cand;
        cand.i = i + 1;
        cand.j = j + 1;
        cand.p = ratio->num;
        cand.q = ratio->den;
        cand.satisfied = static_cast<double>(cand.q) >= threshold;
        if (!have || (cand.satisfied && !best.satisfied)) {
          best = cand;
          have = true;
        }
        if (best.satisfied) break;
      }
      if (have && best.satisfied) break;
    }
    if (have) report.rational_alternative = best;
  }
  return report;
}

double lattice_value(const MultiIndex& n, const Network& net) {
  if (n.dim() != static_cast<std::size_t>(net.n))
    throw std::invalid_argument("lattice_value: dimension mismatch");
  double s = 0.0;
  for (int i = 0; i < net.n; ++i) s += n[static_cast<std::size_t>(i)] * net.length(i);
  return s;
}

LatticeStream::LatticeStream(const Network& net, double t, int fixed_zero, std::size_t budget)
    : net_(&net), t_(t), tol_(lattice_tolerance(t)), fixed_zero_(fixed_zero), budget_(budget) {
  if (t < 0.0) throw std::invalid_argument("LatticeStream: negative horizon");
  push(MultiIndex(static_cast<std::size_t>(net.n)));
}

void LatticeStream::push(MultiIndex n) {
  const double l = lattice_value(n, *net_);
  if (l > t_ + tol_) return;
  heap_.push_back(Item{l, std::move(n)});
  std::push_heap(heap_.begin(), heap_.end(), std::greater<Item>{});
}

std::optional<MultiIndex> LatticeStream::next() {
  if (heap_.empty()) return std::nullopt;
  if (++emitted_ > budget_)
    throw std::length_error("LatticeStream: lattice budget exceeded");
  std::pop_heap(heap_.begin(), heap_.end(), std::greater<Item>{});
  MultiIndex n = std::move(heap_.back().n);
  heap_.pop_back();

  // Each point is generated once, from its canonical parent: children extend
  // coordinates up to (and including) the first nonzero one.
  std::size_t first_nonzero = n.dim();
  for (std::size_t k = 0; k < n.dim(); ++k)
    if (n[k] > 0) {
      first_nonzero = k;
      break;
    }
  for (std::size_t k = 0; k <= std::min(first_nonzero, n.dim() - 1); ++k) {
    if (static_cast<int>(k) == fixed_zero_) continue;
    push(n.plus_unit(k));
  }
  return n;
}

std::vector<MultiIndex> enumerate_lattice_all(const Network& net, double t, std::size_t budget) {
  LatticeStream stream(net, t, -1, budget);
  std::vector<MultiIndex> out;
  while (auto n = stream.next()) out.push_back(std::move(*n));
  return out;
}

std::vector<MultiIndex> enumerate_lattice(int j, double t, const Network& net,
                                          std::size_t budget) {
  if (j < 0 || j >= net.n) throw std::invalid_argument("enumerate_lattice: bad circle index");
  LatticeStream stream(net, t, j, budget);
  std::vector<MultiIndex> out;
  while (auto n = stream.next()) out.push_back(std::move(*n));
  return out;
}

}  // namespace ringnet
