#include "ringnet/solver.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace ringnet {

namespace {

// 12-point Gauss-Legendre rule on [-1, 1].
constexpr double kGaussX[12] = {
    -0.9815606342467192, -0.9041172563704749, -0.7699026741943047, -0.5873179542866175,
    -0.3678314989981802, -0.1252334085114689, 0.1252334085114689,  0.3678314989981802,
    0.5873179542866175,  0.7699026741943047,  0.9041172563704749,  0.9815606342467192};
constexpr double kGaussW[12] = {
    0.0471753363865118, 0.1069393259953184, 0.1600783285433462, 0.2031674267230659,
    0.2334925365383548, 0.2491470458134028, 0.2491470458134028, 0.2334925365383548,
    0.2031674267230659, 0.1600783285433462, 0.1069393259953184, 0.0471753363865118};

double frac_mod(double x, double y) {
  double r = x - std::floor(x / y) * y;
  if (r < 0.0) r += y;
  if (r >= y) r -= y;
  return r;
}

}  // namespace

TraceField::TraceField(Network net, std::vector<StepSignal> signals, InitialData data,
                       double t_max)
    : net_(std::move(net)), signals_(std::move(signals)), data_(std::move(data)), t_max_(t_max) {
  const auto report = validate_network(net_);
  if (!report.ok())
    throw std::invalid_argument("TraceField: invalid network: " + report.violations.front());
  if (static_cast<int>(signals_.size()) != net_.n)
    throw std::invalid_argument("TraceField: need one signal per circle");
  if (!(t_max_ > 0.0)) throw std::invalid_argument("TraceField: t_max must be positive");
  time_invariant_ = true;
  for (const auto& s : signals_)
    if (!s.is_constant()) time_invariant_ = false;
}

std::shared_ptr<const ThetaTable> TraceField::table_for(double t) const {
  const double key = time_invariant_ ? t_max_ : t;
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  auto table = std::make_shared<ThetaTable>(build_theta(net_, signals_, key));
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    if (cache_.size() > 64) cache_.clear();
    cache_.emplace(key, table);
    return cache_.at(key);
  }
}

double TraceField::trace_from_table(const ThetaTable& table, int i, double t) const {
  const double tol = lattice_tolerance(t);
  double sum = 0.0;
  const auto& nodes = table.nodes();
  for (std::size_t idx = 0; idx < nodes.size(); ++idx) {
    const double l = table.node_lattice_value(idx);
    if (l > t + tol) break;  // nodes are sorted by lattice value
    const MultiIndex& n = nodes[idx];
    double d = t - l;
    if (d < 0.0) d = 0.0;
    for (int j = 0; j < net_.n; ++j) {
      if (n[static_cast<std::size_t>(j)] != 0) continue;
      const double lj = net_.length(j);
      int k = static_cast<int>(std::floor(d / lj));
      double frac = d - k * lj;
      if (frac < 0.0) {
        frac += lj;
        --k;
      } else if (frac >= lj) {
        frac -= lj;
        ++k;
      }
      const MultiIndex m = n.plus_units(static_cast<std::size_t>(j), k);
      const double x = lj - frac;  // evaluation point on circle j, in (0, L_j]
      const double value = data_.eval(j, x);
      if (value == 0.0) continue;
      const double eps = epsilon_factor(j, m, x, t, signals_[static_cast<std::size_t>(j)], net_);
      sum += eps * table.at(m)(i, j) * value;
    }
  }
  return sum;
}

double TraceField::boundary_trace(int i, double t) const {
  if (t < 0.0 || t > t_max_ * (1.0 + 1e-12))
    throw std::out_of_range("boundary_trace: t outside [0, t_max]");
  const auto table = table_for(t);
  return trace_from_table(*table, i, t);
}

double TraceField::field(int i, double t, double x) const {
  const double li = net_.length(i);
  if (x < -1e-12 * li || x > li * (1.0 + 1e-12)) throw std::out_of_range("field: x outside circle");
  x = std::clamp(x, 0.0, li);
  const auto [a, b] = net_.damping[static_cast<std::size_t>(i)];
  // Damping accumulated along the backward characteristic, clipped to [0, t].
  double damp = 1.0;
  if (b > a) {
    const double lo = std::max(0.0, t - x + a);
    const double hi = std::min(t, t - x + b);
    if (hi > lo) damp = std::exp(-signals_[static_cast<std::size_t>(i)].integrate(lo, hi));
  }
  const double base = (t <= x) ? data_.eval(i, x - t) : boundary_trace(i, t - x);
  return base * damp;
}

std::vector<double> TraceField::x_breakpoints(int i, double t) const {
  const double li = net_.length(i);
  std::set<double> pts{0.0, li};
  if (t < li) pts.insert(t);

  // Advected data endpoints for the x >= t branch.
  for (double e : data_.endpoints(i)) {
    const double x = e + t;
    if (x > 0.0 && x < li) pts.insert(x);
  }

  if (t > 0.0) {
    const auto table = table_for(t);
    const double tol = lattice_tolerance(t);
    const auto& nodes = table->nodes();
    // Cap the subdivision effort; beyond this the midpoint grid carries it.
    const bool full = nodes.size() <= 20000;
    for (std::size_t idx = 0; idx < nodes.size() && full; ++idx) {
      const double l = table->node_lattice_value(idx);
      if (l > t + tol) break;
      const double folded = frac_mod(t - l, li);
      if (folded > 0.0 && folded < li) pts.insert(folded);
      // Data endpoints seen through the trace on every circle.
      for (int j = 0; j < net_.n; ++j) {
        const double lj = net_.length(j);
        for (double e : data_.endpoints(j)) {
          const double x = t - l - (lj - e);
          if (x > 0.0 && x < std::min(t, li)) pts.insert(x);
        }
      }
    }
  }

  std::vector<double> out(pts.begin(), pts.end());
  // Merge near-coincident points.
  std::vector<double> merged;
  const double tol = 1e-12 * std::max(1.0, li);
  for (double p : out)
    if (merged.empty() || p - merged.back() > tol) merged.push_back(p);
  if (merged.back() < li) merged.push_back(li);
  return merged;
}

double TraceField::lp_norm(int i, double t, double p, int resolution) const {
  if (resolution < 64) throw std::invalid_argument("lp_norm: resolution must be at least 64");
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be in [1, inf]");
  const double li = net_.length(i);
  const auto pts = x_breakpoints(i, t);

  const bool sup = std::isinf(p);
  double acc = 0.0;
  double peak = 0.0;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    const double lo = pts[k];
    const double len = pts[k + 1] - lo;
    const int nodes = std::max(1, static_cast<int>(std::lround(resolution * len / li)));
    const double h = len / nodes;
    for (int q = 0; q < nodes; ++q) {
      const double x = lo + (q + 0.5) * h;
      const double v = std::abs(field(i, t, x));
      if (sup)
        peak = std::max(peak, v);
      else
        acc += std::pow(v, p) * h;
    }
  }
  return sup ? peak : std::pow(acc, 1.0 / p);
}

double TraceField::total_lp_norm(double t, double p, int resolution) const {
  double acc = 0.0;
  for (int i = 0; i < net_.n; ++i) acc += lp_norm(i, t, p, resolution);
  return acc;
}

double TraceField::circle_integral_pow(int i, double t, int pow, int resolution) const {
  const double li = net_.length(i);
  const auto pts = x_breakpoints(i, t);
  const double target = li / std::max(16, resolution / 4);

  double acc = 0.0;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    const double lo = pts[k];
    const double len = pts[k + 1] - lo;
    const int subs = std::max(1, static_cast<int>(std::ceil(len / target)));
    const double h = len / subs;
    for (int s = 0; s < subs; ++s) {
      const double mid = lo + (s + 0.5) * h;
      double local = 0.0;
      for (int g = 0; g < 12; ++g) {
        const double x = mid + 0.5 * h * kGaussX[g];
        double v = field(i, t, x);
        double vp = v;
        for (int e = 1; e < pow; ++e) vp *= v;
        local += kGaussW[g] * vp;
      }
      acc += 0.5 * h * local;
    }
  }
  return acc;
}

double field_difference_l2(const TraceField& f, double t1, double t2, int resolution) {
  double acc = 0.0;
  for (int i = 0; i < f.net().n; ++i) {
    const double li = f.net().length(i);
    const auto p1 = f.x_breakpoints(i, t1);
    const auto p2 = f.x_breakpoints(i, t2);
    std::set<double> merged(p1.begin(), p1.end());
    merged.insert(p2.begin(), p2.end());
    const std::vector<double> pts(merged.begin(), merged.end());
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
      const double lo = pts[k];
      const double len = pts[k + 1] - lo;
      if (len <= 1e-13 * std::max(1.0, li)) continue;
      const int nodes = std::max(1, static_cast<int>(std::lround(resolution * len / li)));
      const double h = len / nodes;
      for (int q = 0; q < nodes; ++q) {
        const double x = lo + (q + 0.5) * h;
        const double d = f.field(i, t1, x) - f.field(i, t2, x);
        acc += d * d * h;
      }
    }
  }
  return std::sqrt(acc);
}

double trace_window_lp(const TraceField& f, int i, double t, double p, int resolution) {
  const double li = f.net().length(i);
  const double lo_time = std::max(0.0, t - li);

  // Trace breakpoints: lattice values and advected data endpoints.
  std::set<double> pts{lo_time, t};
  const auto table = f.table_for(t);
  const double tol = lattice_tolerance(t);
  const auto& nodes = table->nodes();
  for (std::size_t idx = 0; idx < nodes.size(); ++idx) {
    const double l = table->node_lattice_value(idx);
    if (l > t + tol) break;
    if (l > lo_time && l < t) pts.insert(l);
    for (int j = 0; j < f.net().n; ++j) {
      const double lj = f.net().length(j);
      for (double e : f.data().endpoints(j)) {
        const double s = l + (lj - e);
        if (s > lo_time && s < t) pts.insert(s);
      }
    }
  }

  std::vector<double> grid(pts.begin(), pts.end());
  double acc = 0.0;
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    const double lo = grid[k];
    const double len = grid[k + 1] - lo;
    const int n = std::max(1, static_cast<int>(std::lround(resolution * len / li)));
    const double h = len / n;
    for (int q = 0; q < n; ++q) {
      const double s = lo + (q + 0.5) * h;
      acc += std::pow(std::abs(f.boundary_trace(i, s)), p) * h;
    }
  }
  return std::pow(acc, 1.0 / p);
}

}  // namespace ringnet
