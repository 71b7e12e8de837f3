#include "ringnet/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace ringnet {

namespace {

double lchoose(long n, long k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms = 0.0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double sx = std::accumulate(x.begin(), x.end(), 0.0);
  const double sy = std::accumulate(y.begin(), y.end(), 0.0);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxx += x[k] * x[k];
    sxy += x[k] * y[k];
  }
  LineFit fit;
  const double denom = n * sxx - sx * sx;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double r = y[k] - (fit.intercept + fit.slope * x[k]);
    ss += r * r;
  }
  fit.rms = std::sqrt(ss / n);
  return fit;
}

}  // namespace

DecayFit fit_decay(const std::vector<std::pair<double, double>>& samples) {
  if (samples.size() < 8) throw std::invalid_argument("fit_decay: need at least 8 samples");
  std::vector<double> t, logv;
  for (const auto& [ti, vi] : samples) {
    if (!(vi > 0.0)) throw std::invalid_argument("fit_decay: non-positive value");
    t.push_back(ti);
    logv.push_back(std::log(vi));
  }
  const LineFit fit = least_squares(t, logv);
  DecayFit out;
  out.c = std::exp(fit.intercept);
  out.gamma = -fit.slope;
  out.residual = fit.rms;
  out.samples = samples;
  return out;
}

double mixing_nu(const Eigen::MatrixXd& m) {
  const int n = static_cast<int>(m.rows());
  if (l1_norm(m) > 1.0 + 1e-15 || m.cwiseAbs().minCoeff() <= 0.0)
    throw std::invalid_argument("mixing_nu: transmission hypothesis violated");
  double nu = 0.0;
  for (int k = 0; k < n; ++k) {
    double mu_k = 0.0, nu_k = 0.0;
    for (int j = 0; j < n; ++j) {
      double col = 0.0;
      for (int i = 0; i < n; ++i)
        if (i != k) col += std::abs(m(i, j));
      mu_k = std::max(mu_k, col);
      nu_k = std::max(nu_k, std::abs(m(k, j)));
    }
    nu = std::max(nu, std::max(mu_k, nu_k));
  }
  return nu;
}

PEQuantities pe_quantities(double T, double mu, double a_j, double b_j) {
  if (!(mu > 0.0) || T < mu) throw std::invalid_argument("pe_quantities: need T >= mu > 0");
  if (!(b_j > a_j)) throw std::invalid_argument("pe_quantities: need b_j > a_j");
  PEQuantities q;
  q.rho = mu * (b_j - a_j) / (2.0 * T);
  q.ell = std::min(q.rho, T);
  return q;
}

IntervalCertificate check_interval_lemma(const StepSignal& alpha, double T, double mu, double a_j,
                                         double b_j, double t) {
  const PEQuantities q = pe_quantities(T, mu, a_j, b_j);
  const double rho_ok = q.rho * (1.0 - 1e-12);
  const double len_ok = q.ell * (1.0 - 1e-9);

  // A(tau) = int_{tau+a}^{tau+b} alpha is piecewise linear; kinks occur where
  // tau + a or tau + b crosses a signal breakpoint (mod period).
  const double period = alpha.period();
  std::set<double> kinks{t, t + T};
  for (double br : alpha.breakpoints()) {
    for (double shift : {a_j, b_j}) {
      const double base = br - shift;
      const long k_lo = static_cast<long>(std::floor((t - base) / period));
      const long k_hi = static_cast<long>(std::ceil((t + T - base) / period));
      for (long k = k_lo; k <= k_hi; ++k) {
        const double tau = base + static_cast<double>(k) * period;
        if (tau > t && tau < t + T) kinks.insert(tau);
      }
    }
  }

  const std::vector<double> grid(kinks.begin(), kinks.end());
  std::vector<double> a_vals;
  a_vals.reserve(grid.size());
  for (double tau : grid) a_vals.push_back(alpha.integrate(tau + a_j, tau + b_j));

  IntervalCertificate cert;
  cert.witness_value = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < grid.size(); ++k)
    if (a_vals[k] < cert.witness_value) {
      cert.witness_value = a_vals[k];
      cert.witness_t = grid[k];
    }

  // Super-level set {A >= rho} piece by piece, merging adjacent intervals.
  double run_lo = 0.0, run_hi = 0.0;
  bool running = false;
  auto finish = [&]() {
    if (running && run_hi - run_lo >= len_ok && !cert.found) {
      cert.found = true;
      cert.lo = run_lo;
      cert.hi = run_hi;
    }
    running = false;
  };
  for (std::size_t k = 0; k + 1 < grid.size() && !cert.found; ++k) {
    const double t0 = grid[k], t1 = grid[k + 1];
    const double v0 = a_vals[k], v1 = a_vals[k + 1];
    double lo = t0, hi = t1;
    bool any = true;
    if (v0 >= rho_ok && v1 >= rho_ok) {
      // whole piece qualifies
    } else if (v0 >= rho_ok) {
      hi = t0 + (t1 - t0) * (v0 - rho_ok) / (v0 - v1);
    } else if (v1 >= rho_ok) {
      lo = t1 - (t1 - t0) * (v1 - rho_ok) / (v1 - v0);
    } else {
      any = false;
    }
    if (!any) {
      finish();
      continue;
    }
    if (running && lo <= run_hi + 1e-12 * std::max(1.0, std::abs(run_hi))) {
      run_hi = hi;
    } else {
      finish();
      running = true;
      run_lo = lo;
      run_hi = hi;
    }
    if (hi < t1) finish();
  }
  finish();
  return cert;
}

bool denominator_condition(std::int64_t p, std::int64_t q, double L_j, double T, double mu,
                           double a_j, double b_j) {
  if (p <= 0 || q <= 0 || std::gcd(p, q) != 1)
    throw std::invalid_argument("denominator_condition: p, q must be coprime positive integers");
  if (!(mu > 0.0) || T < mu || !(b_j > a_j))
    throw std::invalid_argument("denominator_condition: bad parameters");
  const double threshold =
      3.0 * L_j * (std::max(2.0 * T / (mu * (b_j - a_j)), 1.0 / T) + 1.0 / T);
  return static_cast<double>(q) >= threshold;
}

RhoResult find_rho(double nu) {
  if (!(nu > 0.0) || !(nu < 1.0)) throw std::invalid_argument("find_rho: nu must be in (0, 1)");
  const double target = 0.5 * std::log(nu);
  auto g = [nu](double rho) {
    return rho * std::log(1.0 / rho) + (1.0 - rho) * std::log(1.0 / (1.0 - rho)) + std::log(nu);
  };

  RhoResult out;
  const double half = 0.5 * (1.0 - 1e-9);
  if (g(half) <= target) {
    out.rho = half;  // entropy never reaches the target; any rho < 1/2 works
  } else {
    double lo = 1e-12, hi = half;
    for (int iter = 0; iter < 200; ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (g(mid) <= target)
        lo = mid;
      else
        hi = mid;
    }
    out.rho = lo;
  }

  out.gamma = -0.25 * std::log(nu);
  double log_c = 0.0;
  for (long n = 0; n <= 10000; ++n) {
    const long k = static_cast<long>(std::floor(out.rho * static_cast<double>(n)));
    const double lhs = lchoose(n, k) + static_cast<double>(n) * std::log(nu) +
                       out.gamma * static_cast<double>(n);
    log_c = std::max(log_c, lhs);
  }
  out.c = std::exp(log_c);
  return out;
}

BoundAuditReport bound_audit(const ThetaTable& table, const Network& net,
                             std::optional<double> nu) {
  BoundAuditReport report;
  report.m_l1 = l1_norm(net.m);
  const bool unit_bound = report.m_l1 <= 1.0 + 1e-15;

  if (!nu && net.m.cwiseAbs().minCoeff() > 0.0 && unit_bound) nu = mixing_nu(net.m);
  report.nu = nu.value_or(0.0);
  const double log_l1 = std::log(report.m_l1);
  const double log_nu = nu ? std::log(*nu) : 0.0;

  std::map<long, double> envelope;
  const auto& nodes = table.nodes();
  for (std::size_t idx = 0; idx < nodes.size(); ++idx) {
    const MultiIndex& n = nodes[idx];
    const long l1 = n.l1();
    const Eigen::MatrixXd& mat = table.at(n);
    const double peak = mat.cwiseAbs().maxCoeff();
    auto [it, inserted] = envelope.emplace(l1, peak);
    if (!inserted) it->second = std::max(it->second, peak);

    // Rough bound |entry| <= |M|^{|n|+1}.
    const double rough = std::exp(static_cast<double>(l1 + 1) * log_l1);
    // Binomial bound per coordinate (smallest over k is the sharpest).
    double binom = std::numeric_limits<double>::infinity();
    if (nu) {
      for (std::size_t k = 0; k < n.dim(); ++k) {
        const double bd = std::exp(lchoose(l1, n[k]) + static_cast<double>(l1) * log_nu);
        binom = std::min(binom, bd);
      }
    }
    for (int i = 0; i < net.n; ++i)
      for (int j = 0; j < net.n; ++j) {
        const double v = std::abs(mat(i, j));
        if (v > rough * (1.0 + 1e-12) + 1e-280)
          report.violations.push_back({"rough", n, i + 1, j + 1, v, rough});
        if (unit_bound && v > 1.0 + 1e-12)
          report.violations.push_back({"unit", n, i + 1, j + 1, v, 1.0});
        if (nu && v > binom * (1.0 + 1e-9) + 1e-280)
          report.violations.push_back({"binomial", n, i + 1, j + 1, v, binom});
      }
  }

  // Envelope over complete anti-diagonals only.
  const long complete =
      static_cast<long>(std::floor((table.horizon() + lattice_tolerance(table.horizon())) /
                                   net.l_max()));
  std::vector<double> xs, ys;
  for (const auto& [m, peak] : envelope) {
    if (m > complete) break;
    if (peak > 0.0) {
      report.envelope.emplace_back(m, peak);
      xs.push_back(static_cast<double>(m));
      ys.push_back(std::log(peak));
    }
  }
  if (xs.size() >= 2) {
    const LineFit fit = least_squares(xs, ys);
    report.envelope_rate = -fit.slope;
    report.envelope_intercept = fit.intercept;
  }
  return report;
}

TwoCircleFunctionals two_circle_functionals(const TraceField& f, double t, int resolution) {
  const Network& net = f.net();
  if (net.n != 2) throw std::invalid_argument("two_circle_functionals: need two circles");
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (std::abs(net.m(i, j) - 0.5) > 1e-12)
        throw std::invalid_argument("two_circle_functionals: transmission must average the circles");
  for (int i = 0; i < net.n_d; ++i) {
    const auto& s = f.signals()[static_cast<std::size_t>(i)];
    if (!(s.is_constant() && s.values().front() == 0.0))
      throw std::invalid_argument("two_circle_functionals: damping must be inactive");
  }

  TwoCircleFunctionals out;
  out.v = f.circle_integral_pow(0, t, 2, resolution) + f.circle_integral_pow(1, t, 2, resolution);
  const double mass =
      f.circle_integral_pow(0, t, 1, resolution) + f.circle_integral_pow(1, t, 1, resolution);
  out.u = mass / (net.length(0) + net.length(1));
  const double d = f.field(0, t, net.length(0)) - f.field(1, t, net.length(1));
  out.vdot = -0.5 * d * d;
  return out;
}

}  // namespace ringnet
