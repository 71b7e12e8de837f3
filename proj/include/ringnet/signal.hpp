#pragma once

#include <cstdint>
#include <vector>

namespace ringnet {

/// Periodic piecewise-constant signal with values in [0, 1], defined on all
/// of R by periodic extension. Integrals over the step structure are exact.
class StepSignal {
 public:
  StepSignal(double period, std::vector<double> breakpoints, std::vector<double> values);

  static StepSignal constant(double value, double period = 1.0);

  double period() const { return period_; }
  const std::vector<double>& breakpoints() const { return starts_; }
  const std::vector<double>& values() const { return values_; }

  double value_at(double t) const;

  /// Integral of the signal over [lo, hi]; 0 when lo >= hi.
  double integrate(double lo, double hi) const;

  /// Integral over one period.
  double period_integral() const { return full_period_; }

  bool is_constant() const;

  /// Signal t -> value(t + delta); same period.
  StepSignal shifted(double delta) const;

 private:
  double period_;
  std::vector<double> starts_;   // normalized: starts_[0] == 0, strictly increasing
  std::vector<double> values_;   // value on [starts_[k], starts_[k+1])
  std::vector<double> prefix_;   // integral over [0, starts_[k]]
  double full_period_;

  double prefix_at(double r) const;  // integral over [0, r], r in [0, period)
};

struct PEWitness {
  bool is_pe = false;
  double worst_t = 0.0;
  double worst_integral = 0.0;
};

/// Decides membership in the class of (T, mu)-persistently exciting signals.
/// The sliding-window integral W(t) = int_t^{t+T} alpha is piecewise linear
/// with kinks on a finite set, so the minimum over one period is exact.
PEWitness verify_pe(const StepSignal& alpha, double T, double mu);

/// Period-L signal equal to 1 on [0, (L-b)/2] and 0 elsewhere; lets an
/// initial bump supported in [b, (b+L)/2] circulate without ever being
/// damped, so the single-circle solution stays L-periodic.
StepSignal make_single_circle_escape(double L, double b);

/// Period-ell {0,1} signal vanishing exactly on the periodized image of
/// [a - ell/2, b]; requires b - a <= ell/4 and lies in the PE class with
/// window 4*(ell/4) and budget ell/4.
StepSignal make_two_circle_pe_escape(double ell, double a, double b);

/// Seeded random (T, mu)-persistently exciting signal of period T: one
/// contiguous on-block of length mu plus random extra blocks; the result is
/// re-verified before being returned.
StepSignal make_random_pe(double T, double mu, std::uint64_t seed);

}  // namespace ringnet
