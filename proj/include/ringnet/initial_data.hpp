#pragma once

#include <string>
#include <vector>

#include "ringnet/network.hpp"

namespace ringnet {

/// One piece of per-circle initial data on [lo, hi]. Polynomials are in the
/// local coordinate s = x - lo; bumps are h * exp(-1/(1-u^2)) with u the
/// affine map of [lo, hi] onto (-1, 1), extended by zero.
struct Segment {
  enum class Kind { Poly, Bump };
  Kind kind = Kind::Poly;
  double lo = 0.0;
  double hi = 0.0;
  std::vector<double> coeffs;  // Poly: c0 + c1 s + ... (degree <= 8)
  double height = 0.0;         // Bump scale

  double eval(double x) const;

  static Segment poly(double lo, double hi, std::vector<double> coeffs);
  static Segment bump(double lo, double hi, double height);
};

/// Per-circle piecewise initial data; segments tile [0, L_i] without overlap.
class InitialData {
 public:
  InitialData() = default;
  InitialData(const Network& net, std::vector<std::vector<Segment>> circles);

  /// Constant value on every circle.
  static InitialData constant(const Network& net, double value);

  /// A single bump per circle with support [lo_i, hi_i], rest zero.
  static InitialData single_bump(const Network& net, const std::vector<double>& lo,
                                 const std::vector<double>& hi, const std::vector<double>& height);

  /// Bump comb u_i(x) = sum_k phi(x - k*ell) with phi a bump supported in
  /// [support_lo, support_hi] (coordinates relative to each cell of width
  /// ell); circle lengths must be integer multiples of ell.
  static InitialData bump_comb(const Network& net, double ell, double support_lo,
                               double support_hi, double height);

  double eval(int i, double x) const;
  const std::vector<Segment>& circle(int i) const { return circles_[static_cast<std::size_t>(i)]; }
  std::size_t num_circles() const { return circles_.size(); }

  /// Segment boundaries of circle i (includes 0 and L_i).
  std::vector<double> endpoints(int i) const;

 private:
  std::vector<std::vector<Segment>> circles_;
};

/// Junction-compatibility defect max_i |u_i(0) - sum_j m_ij u_j(L_j)|;
/// zero means regular (domain-compatible) data, anything else is still
/// accepted as mild data.
double check_compatibility(const InitialData& z0, const Network& net);

}  // namespace ringnet
