#pragma once

#include <functional>
#include <vector>

#include "ringnet/initial_data.hpp"
#include "ringnet/signal.hpp"
#include "ringnet/solver.hpp"

namespace ringnet {

/// Top-down evaluation of u_i(t, 0) by unrolling the junction relation one
/// circle crossing at a time, memoized on exact lattice offsets. Independent
/// of the bottom-up coefficient tables; this is the reference the solver is
/// checked against.
double recursive_trace(const Network& net, const std::vector<StepSignal>& signals,
                       const InitialData& z0, int i, double t);

/// Same recursion with arbitrary initial data (used e.g. to restart the
/// problem from a previously computed state).
double recursive_trace_fn(const Network& net, const std::vector<StepSignal>& signals,
                          const std::function<double(int, double)>& data, int i, double t);

/// Field reconstruction on top of recursive_trace.
double recursive_field(const Network& net, const std::vector<StepSignal>& signals,
                       const InitialData& z0, int i, double t, double x);

/// First-order upwind discretization of the transport system; deliberately
/// low accuracy, used as an independent-family sanity check.
struct UpwindState {
  double time = 0.0;
  std::vector<double> h;                    // grid spacing per circle
  std::vector<std::vector<double>> cells;   // cell averages per circle
};

UpwindState make_upwind_state(const Network& net, const InitialData& z0, int cells_min_circle);

/// One explicit step; requires dt <= min_i h_i. Junction inflow comes from
/// the transmission matrix applied to the upstream boundary cells; damping is
/// applied as an exact exponential factor per cell.
void upwind_step(UpwindState& state, const Network& net, const std::vector<StepSignal>& signals,
                 double dt);

/// Advances to time t (final partial step included).
void upwind_run(UpwindState& state, const Network& net, const std::vector<StepSignal>& signals,
                double t, double cfl = 1.0);

double upwind_mass(const UpwindState& state);
double upwind_lp_norm(const UpwindState& state, int i, double p);

/// Junction value u_i(t, 0) of the current grid state.
double upwind_trace(const UpwindState& state, const Network& net, int i);

}  // namespace ringnet
