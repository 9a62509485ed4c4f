#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "slb/analysis.hpp"
#include "slb/scenario.hpp"

namespace slb {

std::string tool_version();

/// UTC, ISO 8601, second resolution.
std::string utc_timestamp();

/// Runs the full evaluation with the scenario's own options.
Evaluation evaluate_scenario(const Scenario& s);

nlohmann::json to_json(const NetPosition& n);
nlohmann::json to_json(const ConditionResult& c);
nlohmann::json to_json(const DecisionReport& r);
nlohmann::json to_json(const CashflowSummary& cf);
nlohmann::json to_json(const BreakevenResult& b);
nlohmann::json to_json(const std::vector<SweepRow>& rows, std::string_view variable);
nlohmann::json to_json(const std::vector<TornadoRow>& rows, double perturbation);
nlohmann::json to_json(const std::vector<Finding>& findings);

/// Scenario echo, cash flows, decision, tool version and timestamp.
nlohmann::json report_document(const Scenario& s, const Evaluation& ev, const std::string& timestamp);

/// The text every machine-facing output uses for a JSON document.
std::string dump_document(const nlohmann::json& j);

/// Human-readable renderings for --pretty and `compare`.
std::string render_report(const Scenario& s, const Evaluation& ev);
std::string render_comparison(const Scenario& s, const Evaluation& ev);
std::string render_tornado(const std::vector<TornadoRow>& rows);

}  // namespace slb
