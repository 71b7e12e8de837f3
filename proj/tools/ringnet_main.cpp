// ringnet - semi-analytic transport on a star of circles with intermittent damping.
//
// Subcommands: simulate, trace, coeffs, bounds, fit-decay, verify-pe, oracle,
// scenario, hypotheses. Exit codes: 0 success, 1 verification failure,
// 2 input error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "ringnet/analysis.hpp"
#include "ringnet/oracle.hpp"
#include "ringnet/parallel.hpp"
#include "ringnet/scenario.hpp"
#include "ringnet/serialize.hpp"
#include "ringnet/solver.hpp"

namespace {

constexpr const char* kCsvVersion = "# ringnet csv v1";

using ringnet::csv_double;

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  return out;
}

ringnet::Network network_from_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  nlohmann::json j;
  in >> j;
  if (j.contains("network")) return ringnet::network_from_json(j.at("network"));
  return ringnet::network_from_json(j);
}

struct SimulateArgs {
  std::string config;
  double p = 2.0;
  double t_max = 10.0;
  int samples = 64;
  int resolution = 256;
  int threads = ringnet::default_threads();
  std::string out;
};

void write_rows(std::ostream& os, const std::vector<std::string>& rows) {
  os << kCsvVersion << "\n";
  os << "t,circle,p,norm,trace\n";
  for (const auto& r : rows) os << r << "\n";
}

int run_simulate(const SimulateArgs& args) {
  const auto spec = ringnet::load_scenario_file(args.config);
  ringnet::TraceField field(spec.net, spec.signals, spec.data, args.t_max * (1.0 + 1e-12));

  std::vector<std::string> rows(static_cast<std::size_t>(args.samples) *
                                static_cast<std::size_t>(spec.net.n));
  ringnet::parallel_for(static_cast<std::size_t>(args.samples), args.threads, [&](std::size_t k) {
    const double t = args.t_max * static_cast<double>(k + 1) / args.samples;
    for (int i = 0; i < spec.net.n; ++i) {
      const double norm = field.lp_norm(i, t, args.p, args.resolution);
      const double tr = field.boundary_trace(i, t);
      std::ostringstream row;
      row << csv_double(t) << "," << (i + 1) << "," << csv_double(args.p) << ","
          << csv_double(norm) << "," << csv_double(tr);
      rows[k * static_cast<std::size_t>(spec.net.n) + static_cast<std::size_t>(i)] = row.str();
    }
  });

  auto out = open_out(args.out);
  write_rows(out, rows);
  return 0;
}

int run_oracle(const SimulateArgs& args, const std::string& method) {
  const auto spec = ringnet::load_scenario_file(args.config);
  std::vector<std::string> rows;

  if (method == "recursive") {
    rows.resize(static_cast<std::size_t>(args.samples) * static_cast<std::size_t>(spec.net.n));
    ringnet::parallel_for(static_cast<std::size_t>(args.samples), args.threads, [&](std::size_t k) {
      const double t = args.t_max * static_cast<double>(k + 1) / args.samples;
      for (int i = 0; i < spec.net.n; ++i) {
        // Plain midpoint grid; the trace column is the exact quantity here.
        const double li = spec.net.length(i);
        const double h = li / args.resolution;
        double acc = 0.0;
        double peak = 0.0;
        for (int q = 0; q < args.resolution; ++q) {
          const double v = std::abs(
              ringnet::recursive_field(spec.net, spec.signals, spec.data, i, t, (q + 0.5) * h));
          acc += std::pow(v, args.p) * h;
          peak = std::max(peak, v);
        }
        const double norm = std::isinf(args.p) ? peak : std::pow(acc, 1.0 / args.p);
        const double tr = ringnet::recursive_trace(spec.net, spec.signals, spec.data, i, t);
        std::ostringstream row;
        row << csv_double(t) << "," << (i + 1) << "," << csv_double(args.p) << ","
            << csv_double(norm) << "," << csv_double(tr);
        rows[k * static_cast<std::size_t>(spec.net.n) + static_cast<std::size_t>(i)] = row.str();
      }
    });
  } else if (method == "upwind") {
    auto state = ringnet::make_upwind_state(spec.net, spec.data, args.resolution);
    for (int k = 0; k < args.samples; ++k) {
      const double t = args.t_max * static_cast<double>(k + 1) / args.samples;
      ringnet::upwind_run(state, spec.net, spec.signals, t);
      for (int i = 0; i < spec.net.n; ++i) {
        std::ostringstream row;
        row << csv_double(t) << "," << (i + 1) << "," << csv_double(args.p) << ","
            << csv_double(ringnet::upwind_lp_norm(state, i, args.p)) << ","
            << csv_double(ringnet::upwind_trace(state, spec.net, i));
        rows.push_back(row.str());
      }
    }
  } else {
    std::cerr << "unknown oracle method: " << method << "\n";
    return 2;
  }

  auto out = open_out(args.out);
  write_rows(out, rows);
  return 0;
}

int run_trace(const SimulateArgs& args) {
  const auto spec = ringnet::load_scenario_file(args.config);
  ringnet::TraceField field(spec.net, spec.signals, spec.data, args.t_max * (1.0 + 1e-12));
  std::vector<std::string> rows(static_cast<std::size_t>(args.samples) *
                                static_cast<std::size_t>(spec.net.n));
  ringnet::parallel_for(static_cast<std::size_t>(args.samples), args.threads, [&](std::size_t k) {
    const double t = args.t_max * static_cast<double>(k + 1) / args.samples;
    for (int i = 0; i < spec.net.n; ++i) {
      std::ostringstream row;
      row << csv_double(t) << "," << (i + 1) << ","
          << csv_double(field.boundary_trace(i, t));
      rows[k * static_cast<std::size_t>(spec.net.n) + static_cast<std::size_t>(i)] = row.str();
    }
  });
  auto out = open_out(args.out);
  out << kCsvVersion << "\n";
  out << "t,circle,value\n";
  for (const auto& r : rows) out << r << "\n";
  return 0;
}

int run_coeffs(const std::string& config, double horizon, const std::string& out_path) {
  const auto spec = ringnet::load_scenario_file(config);
  const auto theta = ringnet::build_theta(spec.net, spec.signals, horizon);
  const auto beta = ringnet::build_beta_lattice(spec.net, horizon);

  auto out = open_out(out_path);
  out << kCsvVersion << "\n";
  for (int k = 0; k < spec.net.n; ++k) out << "n_" << (k + 1) << ",";
  out << "i,j,theta,beta,l1\n";
  for (const auto& n : theta.nodes()) {
    const auto& tm = theta.at(n);
    const auto& bm = beta.at(n);
    for (int i = 0; i < spec.net.n; ++i)
      for (int j = 0; j < spec.net.n; ++j) {
        for (std::size_t k = 0; k < n.dim(); ++k) out << n[k] << ",";
        out << (i + 1) << "," << (j + 1) << "," << csv_double(tm(i, j)) << ","
            << csv_double(bm(i, j)) << "," << n.l1() << "\n";
      }
  }
  return 0;
}

int run_bounds(const std::string& config, double horizon, const std::string& out_path) {
  const auto spec = ringnet::load_scenario_file(config);
  const auto theta = ringnet::build_theta(spec.net, spec.signals, horizon);
  const auto report = ringnet::bound_audit(theta, spec.net);
  const auto j = ringnet::to_json(report);
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    auto out = open_out(out_path);
    out << j.dump(2) << "\n";
  }
  return report.ok() ? 0 : 1;
}

int run_fit_decay(const std::string& in_path, double p_wanted, double t_min) {
  std::ifstream in(in_path);
  if (!in) throw std::runtime_error("cannot open csv file: " + in_path);
  std::map<double, double> totals;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 't') continue;
    std::istringstream ls(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() < 4) continue;
    const double t = std::stod(cells[0]);
    const double p = std::stod(cells[2]);
    const double norm = std::stod(cells[3]);
    if (std::abs(p - p_wanted) > 1e-12 || t < t_min) continue;
    totals[t] += norm;
  }
  std::vector<std::pair<double, double>> samples(totals.begin(), totals.end());
  const auto fit = ringnet::fit_decay(samples);
  std::cout << ringnet::to_json(fit).dump(2) << "\n";
  return 0;
}

int run_verify_pe(const std::string& config, int signal_index, double T, double mu) {
  const auto spec = ringnet::load_scenario_file(config);
  if (signal_index < 1 || signal_index > static_cast<int>(spec.signals.size()))
    throw std::runtime_error("verify-pe: signal index out of range");
  const double T_used = T > 0.0 ? T : spec.T;
  const double mu_used = mu > 0.0 ? mu : spec.mu;
  const auto witness =
      ringnet::verify_pe(spec.signals[static_cast<std::size_t>(signal_index - 1)], T_used, mu_used);
  nlohmann::json j{{"schema_version", ringnet::kSchemaVersion},
                   {"T", T_used},
                   {"mu", mu_used},
                   {"is_pe", witness.is_pe},
                   {"worst_t", witness.worst_t},
                   {"worst_integral", witness.worst_integral}};
  std::cout << j.dump(2) << "\n";
  return witness.is_pe ? 0 : 1;
}

int run_hypotheses(const std::string& config, double T, double mu) {
  const auto net = network_from_config(config);
  const auto report = ringnet::check_hypotheses(net, T, mu);
  std::cout << ringnet::to_json(report).dump(2) << "\n";
  return report.stability_hypotheses_ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"transport on a network of circles with intermittent damping"};
  app.require_subcommand(1);

  // simulate
  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "evaluate norms and traces on a time grid");
  simulate->add_option("--config", sim.config, "scenario document (JSON)")->required();
  simulate->add_option("--p", sim.p, "norm exponent");
  simulate->add_option("--t-max", sim.t_max, "final time");
  simulate->add_option("--samples", sim.samples, "number of time samples");
  simulate->add_option("--resolution", sim.resolution, "quadrature resolution");
  simulate->add_option("--threads", sim.threads, "worker threads");
  simulate->add_option("--out", sim.out, "output CSV path")->required();

  // trace
  SimulateArgs tra;
  auto* trace = app.add_subcommand("trace", "boundary traces on a time grid");
  trace->add_option("--config", tra.config)->required();
  trace->add_option("--t-max", tra.t_max);
  trace->add_option("--samples", tra.samples);
  trace->add_option("--threads", tra.threads);
  trace->add_option("--out", tra.out)->required();

  // coeffs
  std::string coeffs_config, coeffs_out;
  double coeffs_t = 5.0;
  auto* coeffs = app.add_subcommand("coeffs", "dump populated coefficient tables as CSV");
  coeffs->add_option("--config", coeffs_config)->required();
  coeffs->add_option("--t", coeffs_t, "lattice horizon (time)");
  coeffs->add_option("--out", coeffs_out)->required();

  // bounds
  std::string bounds_config, bounds_out;
  double bounds_t = 5.0;
  auto* bounds = app.add_subcommand("bounds", "audit coefficient bounds");
  bounds->add_option("--config", bounds_config)->required();
  bounds->add_option("--t", bounds_t, "lattice horizon (time)");
  bounds->add_option("--out", bounds_out, "report path (stdout if omitted)");

  // fit-decay
  std::string fit_in;
  double fit_p = 2.0, fit_tmin = 0.0;
  auto* fit = app.add_subcommand("fit-decay", "log-linear decay fit of a norms CSV");
  fit->add_option("--in", fit_in, "CSV produced by simulate")->required();
  fit->add_option("--p", fit_p, "norm exponent to select");
  fit->add_option("--t-min", fit_tmin, "discard samples before this time");

  // verify-pe
  std::string pe_config;
  int pe_index = 1;
  double pe_T = 0.0, pe_mu = 0.0;
  auto* verify = app.add_subcommand("verify-pe", "check persistent excitation of a signal");
  verify->add_option("--config", pe_config)->required();
  verify->add_option("--signal", pe_index, "1-based signal index");
  verify->add_option("--T", pe_T, "window (defaults to the scenario T)");
  verify->add_option("--mu", pe_mu, "budget (defaults to the scenario mu)");

  // oracle
  SimulateArgs ora;
  std::string oracle_method = "recursive";
  auto* oracle = app.add_subcommand("oracle", "independent evaluation for diffing");
  oracle->add_option("--config", ora.config)->required();
  oracle->add_option("--method", oracle_method, "recursive or upwind");
  oracle->add_option("--p", ora.p);
  oracle->add_option("--t-max", ora.t_max);
  oracle->add_option("--samples", ora.samples);
  oracle->add_option("--resolution", ora.resolution);
  oracle->add_option("--threads", ora.threads);
  oracle->add_option("--out", ora.out)->required();

  // scenario
  std::string sc_name, sc_emit, sc_config, sc_alpha = "escape";
  std::int64_t sc_p = 2, sc_q = 3;
  std::string sc_L = "1", sc_ell = "1";
  double sc_a = 0.0, sc_b = 0.25;
  int sc_n = 2, sc_nd = 1, sc_resolution = 256;
  std::uint64_t sc_seed = 1;
  double sc_T = 2.0, sc_mu = 0.5;
  bool sc_check = false;
  auto* scenario = app.add_subcommand("scenario", "build and verify a named construction");
  scenario->add_option("name", sc_name,
                       "one of: single_circle_escape, two_circle_rational_periodic, "
                       "two_circle_pe_periodic, two_circle_irrational_mean, main_theorem_demo");
  scenario->add_option("--config", sc_config, "run a saved scenario document instead");
  scenario->add_option("--L", sc_L, "circle length (rational, e.g. 1 or 3/2)");
  scenario->add_option("--alpha", sc_alpha, "single-circle signal: escape, one, zero");
  scenario->add_option("--p", sc_p);
  scenario->add_option("--q", sc_q);
  scenario->add_option("--ell", sc_ell, "cell length (rational)");
  scenario->add_option("--a", sc_a);
  scenario->add_option("--b", sc_b);
  scenario->add_option("--n", sc_n);
  scenario->add_option("--nd", sc_nd);
  scenario->add_option("--seed", sc_seed);
  scenario->add_option("--T", sc_T);
  scenario->add_option("--mu", sc_mu);
  scenario->add_option("--resolution", sc_resolution);
  scenario->add_flag("--check", sc_check, "run and verify the expectation");
  scenario->add_option("--emit", sc_emit, "write the scenario document");

  // hypotheses
  std::string hyp_config;
  double hyp_T = 1.0, hyp_mu = 1.0;
  auto* hypo = app.add_subcommand("hypotheses", "evaluate the stability hypotheses");
  hypo->add_option("--config", hyp_config)->required();
  hypo->add_option("--T", hyp_T);
  hypo->add_option("--mu", hyp_mu);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*simulate) return run_simulate(sim);
    if (*trace) return run_trace(tra);
    if (*coeffs) return run_coeffs(coeffs_config, coeffs_t, coeffs_out);
    if (*bounds) return run_bounds(bounds_config, bounds_t, bounds_out);
    if (*fit) return run_fit_decay(fit_in, fit_p, fit_tmin);
    if (*verify) return run_verify_pe(pe_config, pe_index, pe_T, pe_mu);
    if (*oracle) return run_oracle(ora, oracle_method);
    if (*hypo) return run_hypotheses(hyp_config, hyp_T, hyp_mu);
    if (*scenario) {
      ringnet::ScenarioSpec spec;
      if (!sc_config.empty()) {
        spec = ringnet::load_scenario_file(sc_config);
      } else if (sc_name == "single_circle_escape") {
        spec = ringnet::single_circle_escape(ringnet::parse_rational(sc_L), sc_b, sc_alpha);
      } else if (sc_name == "two_circle_rational_periodic") {
        spec = ringnet::two_circle_rational_periodic(sc_p, sc_q, ringnet::parse_rational(sc_ell));
      } else if (sc_name == "two_circle_pe_periodic") {
        spec = ringnet::two_circle_pe_periodic(sc_p, sc_q, ringnet::parse_rational(sc_ell), sc_a,
                                               sc_b);
      } else if (sc_name == "two_circle_irrational_mean") {
        spec = ringnet::two_circle_irrational_mean();
      } else if (sc_name == "main_theorem_demo") {
        std::vector<ringnet::LengthTag> tags{ringnet::LengthTag::One, ringnet::LengthTag::Sqrt2,
                                             ringnet::LengthTag::Golden};
        tags.resize(static_cast<std::size_t>(sc_n));
        spec = ringnet::main_theorem_demo(sc_n, sc_nd, tags, sc_seed, sc_T, sc_mu);
      } else {
        std::cerr << "unknown scenario: " << sc_name << "\n";
        return 2;
      }
      if (!sc_emit.empty()) ringnet::save_scenario_file(spec, sc_emit);
      if (sc_check) {
        ringnet::ScenarioOptions opt;
        opt.resolution = sc_resolution;
        const auto result = ringnet::check_scenario(spec, opt);
        std::cout << spec.name << ": " << (result.pass ? "PASS" : "FAIL") << " (" << result.detail
                  << ")\n";
        return result.pass ? 0 : 1;
      }
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
