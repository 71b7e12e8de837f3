#include "ringnet/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace ringnet {

namespace {

struct TraceKey {
  int circle;
  MultiIndex offset;
  bool operator==(const TraceKey& o) const { return circle == o.circle && offset == o.offset; }
};

struct TraceKeyHash {
  std::size_t operator()(const TraceKey& k) const {
    return MultiIndexHash{}(k.offset) * 31u + static_cast<std::size_t>(k.circle);
  }
};

class RecursiveEvaluator {
 public:
  RecursiveEvaluator(const Network& net, const std::vector<StepSignal>& signals,
                     std::function<double(int, double)> data, double t)
      : net_(net), signals_(signals), data_(std::move(data)), t_(t) {
    max_depth_ = static_cast<long>(std::ceil(t / net.l_min())) + net.n + 2;
  }

  double trace(int i) { return evaluate(i, MultiIndex(static_cast<std::size_t>(net_.n)), 0); }

 private:
  const Network& net_;
  const std::vector<StepSignal>& signals_;
  std::function<double(int, double)> data_;
  double t_;
  long max_depth_;
  std::unordered_map<TraceKey, double, TraceKeyHash> memo_;

  // u_i(s, 0) at s = t - L(offset), by one unrolling of the junction relation.
  double evaluate(int i, const MultiIndex& offset, long depth) {
    if (depth > max_depth_)
      throw std::runtime_error("recursive_trace: depth guard hit (implementation bug)");
    const TraceKey key{i, offset};
    const auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;

    const double s = t_ - lattice_value(offset, net_);
    double sum = 0.0;
    for (int j = 0; j < net_.n; ++j) {
      const double lj = net_.length(j);
      const auto [a, b] = net_.damping[static_cast<std::size_t>(j)];
      double damp = 1.0;
      if (b > a) {
        const double lo = std::max(0.0, s - lj + a);
        const double hi = std::min(s, s - lj + b);
        if (hi > lo) damp = std::exp(-signals_[static_cast<std::size_t>(j)].integrate(lo, hi));
      }
      double term;
      if (s <= lj)
        term = data_(j, lj - s);
      else
        term = evaluate(j, offset.plus_unit(static_cast<std::size_t>(j)), depth + 1);
      sum += net_.m(i, j) * damp * term;
    }
    memo_.emplace(key, sum);
    return sum;
  }
};

}  // namespace

double recursive_trace_fn(const Network& net, const std::vector<StepSignal>& signals,
                          const std::function<double(int, double)>& data, int i, double t) {
  if (t < 0.0) throw std::invalid_argument("recursive_trace: negative time");
  if (static_cast<int>(signals.size()) != net.n)
    throw std::invalid_argument("recursive_trace: need one signal per circle");
  RecursiveEvaluator eval(net, signals, data, t);
  return eval.trace(i);
}

double recursive_trace(const Network& net, const std::vector<StepSignal>& signals,
                       const InitialData& z0, int i, double t) {
  return recursive_trace_fn(
      net, signals, [&z0](int j, double x) { return z0.eval(j, x); }, i, t);
}

double recursive_field(const Network& net, const std::vector<StepSignal>& signals,
                       const InitialData& z0, int i, double t, double x) {
  const auto [a, b] = net.damping[static_cast<std::size_t>(i)];
  double damp = 1.0;
  if (b > a) {
    const double lo = std::max(0.0, t - x + a);
    const double hi = std::min(t, t - x + b);
    if (hi > lo) damp = std::exp(-signals[static_cast<std::size_t>(i)].integrate(lo, hi));
  }
  const double base = (t <= x) ? z0.eval(i, x - t) : recursive_trace(net, signals, z0, i, t - x);
  return base * damp;
}

UpwindState make_upwind_state(const Network& net, const InitialData& z0, int cells_min_circle) {
  if (cells_min_circle < 2) throw std::invalid_argument("make_upwind_state: too few cells");
  UpwindState state;
  const double h_target = net.l_min() / cells_min_circle;
  for (int i = 0; i < net.n; ++i) {
    const double li = net.length(i);
    const int cells = std::max(2, static_cast<int>(std::lround(li / h_target)));
    const double h = li / cells;
    state.h.push_back(h);
    std::vector<double> row(static_cast<std::size_t>(cells));
    for (int c = 0; c < cells; ++c) row[static_cast<std::size_t>(c)] = z0.eval(i, (c + 0.5) * h);
    state.cells.push_back(std::move(row));
  }
  return state;
}

void upwind_step(UpwindState& state, const Network& net, const std::vector<StepSignal>& signals,
                 double dt) {
  double h_min = state.h.front();
  for (double h : state.h) h_min = std::min(h_min, h);
  if (dt > h_min * (1.0 + 1e-12)) throw std::invalid_argument("upwind_step: CFL violation");

  // Junction inflow from the current upstream boundary values.
  std::vector<double> outflow(static_cast<std::size_t>(net.n));
  for (int j = 0; j < net.n; ++j) outflow[static_cast<std::size_t>(j)] = state.cells[static_cast<std::size_t>(j)].back();

  for (int i = 0; i < net.n; ++i) {
    auto& u = state.cells[static_cast<std::size_t>(i)];
    const double h = state.h[static_cast<std::size_t>(i)];
    const double lam = dt / h;
    double inflow = 0.0;
    for (int j = 0; j < net.n; ++j) inflow += net.m(i, j) * outflow[static_cast<std::size_t>(j)];

    double upstream = inflow;
    for (std::size_t c = 0; c < u.size(); ++c) {
      const double old = u[c];
      u[c] = old - lam * (old - upstream);
      upstream = old;
    }

    // Exact exponential damping per cell, weighted by the damping overlap.
    const auto [a, b] = net.damping[static_cast<std::size_t>(i)];
    if (b > a) {
      const double window = signals[static_cast<std::size_t>(i)].integrate(state.time, state.time + dt);
      if (window > 0.0) {
        for (std::size_t c = 0; c < u.size(); ++c) {
          const double lo = static_cast<double>(c) * h;
          const double hi = lo + h;
          const double overlap = std::max(0.0, std::min(hi, b) - std::max(lo, a));
          if (overlap > 0.0) u[c] *= std::exp(-window * overlap / h);
        }
      }
    }
  }
  state.time += dt;
}

void upwind_run(UpwindState& state, const Network& net, const std::vector<StepSignal>& signals,
                double t, double cfl) {
  double h_min = state.h.front();
  for (double h : state.h) h_min = std::min(h_min, h);
  const double dt = cfl * h_min;
  while (state.time < t - 1e-14) {
    const double step = std::min(dt, t - state.time);
    upwind_step(state, net, signals, step);
  }
}

double upwind_mass(const UpwindState& state) {
  double mass = 0.0;
  for (std::size_t i = 0; i < state.cells.size(); ++i)
    for (double v : state.cells[i]) mass += v * state.h[i];
  return mass;
}

double upwind_lp_norm(const UpwindState& state, int i, double p) {
  const auto& u = state.cells[static_cast<std::size_t>(i)];
  const double h = state.h[static_cast<std::size_t>(i)];
  if (std::isinf(p)) {
    double peak = 0.0;
    for (double v : u) peak = std::max(peak, std::abs(v));
    return peak;
  }
  double acc = 0.0;
  for (double v : u) acc += std::pow(std::abs(v), p) * h;
  return std::pow(acc, 1.0 / p);
}

double upwind_trace(const UpwindState& state, const Network& net, int i) {
  double inflow = 0.0;
  for (int j = 0; j < net.n; ++j) inflow += net.m(i, j) * state.cells[static_cast<std::size_t>(j)].back();
  return inflow;
}

}  // namespace ringnet
