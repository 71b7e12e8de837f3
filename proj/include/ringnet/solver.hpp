#pragma once

#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "ringnet/coeff.hpp"
#include "ringnet/initial_data.hpp"

namespace ringnet {

/// Semi-analytic solution evaluator built on the lattice coefficient tables.
/// Evaluations are pure and may run concurrently; the internal per-time table
/// cache is synchronized. When every signal is constant the coefficients do
/// not depend on the evaluation time and a single table is reused.
class TraceField {
 public:
  TraceField(Network net, std::vector<StepSignal> signals, InitialData data, double t_max);

  const Network& net() const { return net_; }
  const std::vector<StepSignal>& signals() const { return signals_; }
  const InitialData& data() const { return data_; }
  double t_max() const { return t_max_; }

  /// u_i(t, 0) via the explicit lattice sum.
  double boundary_trace(int i, double t) const;

  /// u_i(t, x): advected data or boundary trace times the damping factor
  /// exp(-int_{[0,t] cap [t-x+a_i, t-x+b_i]} alpha_i).
  double field(int i, double t, double x) const;

  /// L^p norm of u_i(t, .) by composite-midpoint quadrature on a grid
  /// subdivided at the characteristic breakpoints and advected data
  /// endpoints; use p = infinity() for the grid sup.
  double lp_norm(int i, double t, double p, int resolution = 256) const;

  /// sum_i of lp_norm.
  double total_lp_norm(double t, double p, int resolution = 256) const;

  /// int_0^{L_i} u_i(t, x)^pow dx with per-piece Gauss quadrature; pow = 1
  /// gives the signed mass, pow = 2 the squared L^2 norm. Much tighter than
  /// the midpoint rule on smooth data.
  double circle_integral_pow(int i, double t, int pow, int resolution = 256) const;

  /// Quadrature subdivision points for circle i at time t.
  std::vector<double> x_breakpoints(int i, double t) const;

  static double infinity() { return std::numeric_limits<double>::infinity(); }

  std::shared_ptr<const ThetaTable> table_for(double t) const;

 private:
  Network net_;
  std::vector<StepSignal> signals_;
  InitialData data_;
  double t_max_;
  bool time_invariant_;  // all signals constant -> one table serves all t

  mutable std::mutex cache_mutex_;
  mutable std::map<double, std::shared_ptr<const ThetaTable>> cache_;

  double trace_from_table(const ThetaTable& table, int i, double t) const;
};

/// int_{t-L_i}^t |u_i(s, 0)|^p ds, the temporal window norm that dominates
/// the spatial norm at time t (with equality on undamped circles).
double trace_window_lp(const TraceField& f, int i, double t, double p, int resolution = 512);

/// sqrt of sum_i int (u_i(t1, x) - u_i(t2, x))^2 dx on the union of both
/// quadrature grids; the periodicity checks run on this.
double field_difference_l2(const TraceField& f, double t1, double t2, int resolution = 256);

}  // namespace ringnet
