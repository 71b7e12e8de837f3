#include "ringnet/serialize.hpp"

#include <fstream>
#include <sstream>

namespace ringnet {

using nlohmann::json;

json to_json(const Rational& r) { return json{{"num", r.num}, {"den", r.den}}; }

json to_json(const Length& l) {
  json j = to_json(l.rational);
  j["tag"] = tag_name(l.tag);
  return j;
}

json to_json(const Network& net) {
  json lengths = json::array();
  for (const auto& l : net.lengths) lengths.push_back(to_json(l));
  json damping = json::array();
  for (const auto& [a, b] : net.damping) damping.push_back(json::array({a, b}));
  json matrix = json::array();
  for (int i = 0; i < net.n; ++i)
    for (int j = 0; j < net.n; ++j) matrix.push_back(net.m(i, j));
  return json{{"n", net.n},
              {"n_d", net.n_d},
              {"lengths", lengths},
              {"damping", damping},
              {"matrix", matrix}};
}

json to_json(const StepSignal& s) {
  return json{{"period", s.period()}, {"breakpoints", s.breakpoints()}, {"values", s.values()}};
}

json to_json(const Segment& seg) {
  json j{{"lo", seg.lo}, {"hi", seg.hi}};
  if (seg.kind == Segment::Kind::Poly) {
    j["type"] = "poly";
    j["coeffs"] = seg.coeffs;
  } else {
    j["type"] = "bump";
    j["height"] = seg.height;
  }
  return j;
}

json to_json(const InitialData& data) {
  json circles = json::array();
  for (std::size_t i = 0; i < data.num_circles(); ++i) {
    json segs = json::array();
    for (const auto& s : data.circle(static_cast<int>(i))) segs.push_back(to_json(s));
    circles.push_back(segs);
  }
  return circles;
}

json to_json(const Expectation& e) {
  switch (e.kind) {
    case ExpectationKind::Periodic:
      return json{{"type", "PERIODIC"}, {"period", e.period}};
    case ExpectationKind::ExpDecay:
      return json{{"type", "EXP_DECAY"}, {"min_gamma", e.min_gamma}};
    case ExpectationKind::ConvergesToMean:
      return json{{"type", "CONVERGES_TO_MEAN"}, {"tolerance", e.tolerance}};
    case ExpectationKind::NormConstant:
      return json{{"type", "NORM_CONSTANT"}};
  }
  return json{{"type", "NORM_CONSTANT"}};
}

json to_json(const ScenarioSpec& spec) {
  json signals = json::array();
  for (const auto& s : spec.signals) signals.push_back(to_json(s));
  return json{{"schema_version", kSchemaVersion},
              {"name", spec.name},
              {"network", to_json(spec.net)},
              {"signals", signals},
              {"initial", to_json(spec.data)},
              {"T", spec.T},
              {"mu", spec.mu},
              {"expectation", to_json(spec.expect)},
              {"seed", spec.seed}};
}

json to_json(const HypothesisReport& report) {
  json j{{"schema_version", kSchemaVersion},
         {"l1_norm", report.l1_norm},
         {"mixing_ok", report.mixing_ok},
         {"hypotheses_ok", report.stability_hypotheses_ok()}};
  if (report.irrational_pair)
    j["irrational_pair"] = json::array({report.irrational_pair->first, report.irrational_pair->second});
  if (report.rational_alternative) {
    const auto& alt = *report.rational_alternative;
    j["rational_alternative"] = json{
        {"i", alt.i}, {"j", alt.j}, {"p", alt.p}, {"q", alt.q}, {"satisfied", alt.satisfied}};
  }
  return j;
}

json to_json(const BoundAuditReport& report) {
  json violations = json::array();
  for (const auto& v : report.violations) {
    violations.push_back(json{{"kind", v.kind},
                              {"n", v.n.entries()},
                              {"i", v.i},
                              {"j", v.j},
                              {"value", v.value},
                              {"bound", v.bound}});
  }
  json envelope = json::array();
  for (const auto& [m, peak] : report.envelope) envelope.push_back(json::array({m, peak}));
  return json{{"schema_version", kSchemaVersion},
              {"violations", violations},
              {"envelope", envelope},
              {"envelope_rate", report.envelope_rate},
              {"envelope_intercept", report.envelope_intercept},
              {"nu", report.nu},
              {"m_l1", report.m_l1}};
}

json to_json(const DecayFit& fit) {
  return json{{"schema_version", kSchemaVersion},
              {"C", fit.c},
              {"gamma", fit.gamma},
              {"residual", fit.residual},
              {"samples", fit.samples.size()}};
}

Rational rational_from_json(const json& j) {
  return Rational(j.at("num").get<std::int64_t>(), j.at("den").get<std::int64_t>());
}

Length length_from_json(const json& j) {
  const auto tag = tag_from_name(j.at("tag").get<std::string>());
  if (!tag) throw std::invalid_argument("length_from_json: unknown tag");
  return Length(rational_from_json(j), *tag);
}

Network network_from_json(const json& j) {
  const int n = j.at("n").get<int>();
  const int n_d = j.at("n_d").get<int>();
  std::vector<Length> lengths;
  for (const auto& lj : j.at("lengths")) lengths.push_back(length_from_json(lj));
  std::vector<std::pair<double, double>> damping;
  for (const auto& dj : j.at("damping"))
    damping.emplace_back(dj.at(0).get<double>(), dj.at(1).get<double>());
  Eigen::MatrixXd m(n, n);
  const auto& mat = j.at("matrix");
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) m(i, k) = mat.at(static_cast<std::size_t>(i * n + k)).get<double>();
  Network net;
  net.n = n;
  net.n_d = n_d;
  net.lengths = std::move(lengths);
  net.damping = std::move(damping);
  net.m = std::move(m);
  return net;
}

StepSignal signal_from_json(const json& j) {
  return StepSignal(j.at("period").get<double>(), j.at("breakpoints").get<std::vector<double>>(),
                    j.at("values").get<std::vector<double>>());
}

Segment segment_from_json(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "poly")
    return Segment::poly(j.at("lo").get<double>(), j.at("hi").get<double>(),
                         j.at("coeffs").get<std::vector<double>>());
  if (type == "bump")
    return Segment::bump(j.at("lo").get<double>(), j.at("hi").get<double>(),
                         j.at("height").get<double>());
  throw std::invalid_argument("segment_from_json: unknown segment type");
}

InitialData initial_data_from_json(const json& j, const Network& net) {
  std::vector<std::vector<Segment>> circles;
  for (const auto& cj : j) {
    std::vector<Segment> segs;
    for (const auto& sj : cj) segs.push_back(segment_from_json(sj));
    circles.push_back(std::move(segs));
  }
  return InitialData(net, std::move(circles));
}

Expectation expectation_from_json(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "PERIODIC") return Expectation::periodic(j.at("period").get<double>());
  if (type == "EXP_DECAY") return Expectation::exp_decay(j.at("min_gamma").get<double>());
  if (type == "CONVERGES_TO_MEAN")
    return Expectation::converges_to_mean(j.at("tolerance").get<double>());
  if (type == "NORM_CONSTANT") return Expectation::norm_constant();
  throw std::invalid_argument("expectation_from_json: unknown expectation");
}

ScenarioSpec scenario_from_json(const json& j) {
  ScenarioSpec spec;
  spec.name = j.value("name", "scenario");
  spec.net = network_from_json(j.at("network"));
  for (const auto& sj : j.at("signals")) spec.signals.push_back(signal_from_json(sj));
  spec.data = initial_data_from_json(j.at("initial"), spec.net);
  spec.T = j.at("T").get<double>();
  spec.mu = j.at("mu").get<double>();
  spec.expect = expectation_from_json(j.at("expectation"));
  spec.seed = j.value("seed", 0ull);
  return spec;
}

ScenarioSpec load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path);
  json j;
  in >> j;
  return scenario_from_json(j);
}

void save_scenario_file(const ScenarioSpec& spec, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write scenario file: " + path);
  out << to_json(spec).dump(2) << "\n";
}

std::string csv_double(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace ringnet
