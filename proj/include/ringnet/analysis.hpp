#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ringnet/coeff.hpp"
#include "ringnet/solver.hpp"

namespace ringnet {

struct DecayFit {
  double c = 0.0;
  double gamma = 0.0;
  double residual = 0.0;  // RMS of the log-linear fit residuals
  std::vector<std::pair<double, double>> samples;
};

/// Least-squares line through (t, log value); requires >= 8 positive samples.
DecayFit fit_decay(const std::vector<std::pair<double, double>>& samples);

/// Contraction factor nu in (0,1) from the column structure of M: for each k,
/// mu_k = max_j sum_{i != k} |m_ij| and nu_k = max_j |m_kj|; nu is the max of
/// all of them. Requires unit-norm columns with no zero entry.
double mixing_nu(const Eigen::MatrixXd& m);

struct PEQuantities {
  double rho = 0.0;  // guaranteed window integral mu (b-a) / (2T)
  double ell = 0.0;  // guaranteed interval length min(rho, T)
};

PEQuantities pe_quantities(double T, double mu, double a_j, double b_j);

struct IntervalCertificate {
  bool found = false;
  double lo = 0.0;
  double hi = 0.0;
  double witness_t = 0.0;        // minimizer of A on failure
  double witness_value = 0.0;
};

/// Constructive form of the PE interval property: finds a subinterval of
/// [t, t+T] of length >= ell_j on which A(tau) = int_{tau+a}^{tau+b} alpha
/// stays >= rho_j. A is piecewise linear, so the search is exact. Failure
/// on a verified-PE signal indicates an implementation bug.
IntervalCertificate check_interval_lemma(const StepSignal& alpha, double T, double mu, double a_j,
                                         double b_j, double t);

/// q >= 3 L_j (max{2T/(mu (b_j - a_j)), 1/T} + 1/T) for coprime p/q.
bool denominator_condition(std::int64_t p, std::int64_t q, double L_j, double T, double mu,
                           double a_j, double b_j);

struct RhoResult {
  double rho = 0.0;
  double gamma = 0.0;
  double c = 0.0;
};

/// Solves the entropy equation g(rho) = (1/2) log nu on (0, 1/2) for the
/// binomial-tail estimate, with gamma = -(1/4) log nu and C calibrated so
/// that binom(n, floor(rho n)) nu^n <= C e^{-gamma n} for all n <= 10^4.
RhoResult find_rho(double nu);

struct BoundViolation {
  std::string kind;
  MultiIndex n;
  int i = 0;
  int j = 0;
  double value = 0.0;
  double bound = 0.0;
};

struct BoundAuditReport {
  std::vector<BoundViolation> violations;
  std::vector<std::pair<long, double>> envelope;  // (|n|_1, max |entry|), complete diagonals
  double envelope_rate = 0.0;
  double envelope_intercept = 0.0;
  double nu = 0.0;
  double m_l1 = 0.0;
  bool ok() const { return violations.empty(); }
};

/// Checks every populated entry against the rough bound |M|^{|n|+1}, the unit
/// bound (when |M| <= 1) and the binomial bound for every coordinate, then
/// fits the exponential envelope of max |entry| per anti-diagonal.
BoundAuditReport bound_audit(const ThetaTable& table, const Network& net,
                             std::optional<double> nu = std::nullopt);

struct TwoCircleFunctionals {
  double v = 0.0;      // squared L^2 energy
  double vdot = 0.0;   // -(u_1(L_1) - u_2(L_2))^2 / 2
  double u = 0.0;      // conserved mean (int u_1 + int u_2) / (L_1 + L_2)
};

/// Energy, its exact dissipation rate and the conserved mean for the
/// symmetric undamped two-circle network.
TwoCircleFunctionals two_circle_functionals(const TraceField& f, double t, int resolution = 256);

}  // namespace ringnet
