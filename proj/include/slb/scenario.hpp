#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "slb/curve.hpp"
#include "slb/deal.hpp"
#include "slb/decision.hpp"

namespace slb {

inline constexpr std::string_view kSchemaVersion = "1";

struct ScenarioMeta {
    std::string name;
    std::string lifecycle_stage;  // free text, e.g. "Stage one - the decision to lease"
    std::string notes;

    bool operator==(const ScenarioMeta&) const = default;
};

struct ScenarioOptions {
    std::string mode = "verbatim";
    double breakeven_tolerance = 1e-6;
    int breakeven_max_iterations = 200;
    std::optional<double> fd_step;

    ConditionOptions conditions() const { return {fd_step}; }
    bool operator==(const ScenarioOptions&) const = default;
};

/// Unit of exchange between the CLI, the service and the UI.
struct Scenario {
    std::string schema_version{kSchemaVersion};
    ScenarioMeta meta;
    DealParameters deal;
    CurveSet curves;
    ScenarioOptions options;

    bool operator==(const Scenario&) const = default;
};

/// Parses and validates scenario JSON text. Throws SyntaxError with a line
/// and column, SchemaError with the offending field path, or
/// ValidationError with every finding.
Scenario parse_scenario(std::string_view text);

/// As parse_scenario, from an already parsed document. `path` prefixes
/// error paths when the scenario is nested inside a request body.
Scenario scenario_from_json(const nlohmann::json& j, const std::string& path = "");

/// Schema checks only; the deal is not validated.
Scenario scenario_from_json_unvalidated(const nlohmann::json& j, const std::string& path = "");

DealParameters deal_from_json(const nlohmann::json& j, const std::string& path = "deal");

nlohmann::json to_json(const Scenario& s);
nlohmann::json to_json(const DealParameters& p);

/// Canonical text: keys sorted, two-space indent, reals with 17
/// significant digits, trailing newline. parse_scenario inverts it.
std::string serialize_scenario(const Scenario& s);

/// The canonical writer, for any JSON value.
std::string canonical_dump(const nlohmann::json& j);

/// Parses JSON text, mapping parse failures to SyntaxError.
nlohmann::json parse_json(std::string_view text);

}  // namespace slb
