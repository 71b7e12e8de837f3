#pragma once

#include <string>

// Single-header nlohmann/json from vendor/.
#include "json.hpp"

#include "ringnet/analysis.hpp"
#include "ringnet/scenario.hpp"

namespace ringnet {

inline constexpr int kSchemaVersion = 1;

nlohmann::json to_json(const Rational& r);
nlohmann::json to_json(const Length& l);
nlohmann::json to_json(const Network& net);
nlohmann::json to_json(const StepSignal& s);
nlohmann::json to_json(const Segment& seg);
nlohmann::json to_json(const InitialData& data);
nlohmann::json to_json(const Expectation& e);
nlohmann::json to_json(const ScenarioSpec& spec);
nlohmann::json to_json(const HypothesisReport& report);
nlohmann::json to_json(const BoundAuditReport& report);
nlohmann::json to_json(const DecayFit& fit);

Rational rational_from_json(const nlohmann::json& j);
Length length_from_json(const nlohmann::json& j);
Network network_from_json(const nlohmann::json& j);
StepSignal signal_from_json(const nlohmann::json& j);
Segment segment_from_json(const nlohmann::json& j);
InitialData initial_data_from_json(const nlohmann::json& j, const Network& net);
Expectation expectation_from_json(const nlohmann::json& j);
ScenarioSpec scenario_from_json(const nlohmann::json& j);

ScenarioSpec load_scenario_file(const std::string& path);
void save_scenario_file(const ScenarioSpec& spec, const std::string& path);

/// Fixed-format float for CSV output: shortest round-trip representation.
std::string csv_double(double x);

}  // namespace ringnet
