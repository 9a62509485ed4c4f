#include "slb/report.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>

namespace slb {

using nlohmann::json;

std::string tool_version() { return SLB_VERSION; }

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

Evaluation evaluate_scenario(const Scenario& s) {
    return evaluate(s.deal, s.curves, s.options.conditions());
}

json to_json(const NetPosition& n) {
    json components = json::array();
    for (const auto& c : n.components) components.push_back({{"label", c.label}, {"value", c.value}});
    return {{"value", n.value}, {"components", components}};
}

json to_json(const ConditionResult& c) {
    json parts = json::array();
    for (const auto& p : c.parts)
        parts.push_back({{"lhs", p.lhs}, {"rhs", p.rhs}, {"margin", p.margin()}, {"holds", p.holds()}});
    json inputs = json::object();
    for (const auto& [k, v] : c.inputs) inputs[k] = v;
    return {{"id", std::string(to_string(c.id))},
            {"holds", c.holds},
            {"lhs", c.lhs},
            {"rhs", c.rhs},
            {"margin", c.margin},
            {"parts", parts},
            {"inputs", inputs},
            {"notes", c.notes}};
}

json to_json(const DecisionReport& r) {
    json conditions = json::array();
    for (const auto& c : r.conditions) conditions.push_back(to_json(c));
    json failing = json::array();
    for (auto id : r.failing) failing.push_back(std::string(to_string(id)));
    json mapping = json::object();
    for (const auto& [from, to] : symbol_mapping()) mapping[from] = to;
    return {{"n_sl", to_json(r.n_sl)},
            {"n_b", to_json(r.n_b)},
            {"conditions", conditions},
            {"recommendation", std::string(to_string(r.recommendation))},
            {"failing", failing},
            {"warnings", r.warnings},
            {"tax_rate_differential", r.tax_rate_differential},
            {"symbol_mapping", mapping}};
}

json to_json(const CashflowSummary& cf) {
    json amortization = json::array();
    for (const auto& row : cf.amortization)
        amortization.push_back({{"period", row.period_index},
                                {"payment", row.payment},
                                {"interest", row.interest},
                                {"principal", row.principal},
                                {"balance_after", row.balance_after}});
    json depreciation = json::array();
    for (Index k = 0; k < cf.depreciation.size(); ++k)
        depreciation.push_back({{"period", cf.depreciation.periods()(k)},
                                {"amount", cf.depreciation.amounts()(k)}});
    return {{"L_s", cf.lease_pv},
            {"I", cf.interest_pv},
            {"D", cf.depreciation_pv},
            {"TV", cf.terminal_value},
            {"monthly_discount_rate", cf.discount.value},
            {"schedules", {{"amortization", amortization}, {"depreciation", depreciation}}}};
}

json to_json(const BreakevenResult& b) {
    return {{"variable", b.variable},
            {"value", b.value},
            {"residual", b.residual},
            {"iterations", b.iterations},
            {"bracket", {b.lo, b.hi}}};
}

json to_json(const std::vector<SweepRow>& rows, std::string_view variable) {
    json out = json::array();
    for (const auto& r : rows) {
        json row = {{"x", r.x}, {"argmax_n_sl", r.argmax_n_sl}, {"argmax_n_b", r.argmax_n_b}};
        row["n_sl"] = r.n_sl ? json(*r.n_sl) : json(nullptr);
        row["n_b"] = r.n_b ? json(*r.n_b) : json(nullptr);
        row["recommendation"] =
            r.recommendation ? json(std::string(to_string(*r.recommendation))) : json(nullptr);
        row["error"] = r.error.empty() ? json(nullptr) : json(r.error);
        out.push_back(std::move(row));
    }
    return {{"variable", std::string(variable)}, {"rows", out}};
}

json to_json(const std::vector<TornadoRow>& rows, double perturbation) {
    json out = json::array();
    for (const auto& r : rows)
        out.push_back({{"parameter", r.parameter},
                       {"base", r.base},
                       {"low", r.low},
                       {"high", r.high},
                       {"d_n_sl_low", r.d_n_sl_low},
                       {"d_n_sl_high", r.d_n_sl_high},
                       {"d_n_b_low", r.d_n_b_low},
                       {"d_n_b_high", r.d_n_b_high},
                       {"d_diff_low", r.d_diff_low},
                       {"d_diff_high", r.d_diff_high},
                       {"swing", r.swing}});
    return {{"perturbation", perturbation}, {"rows", out}};
}

json to_json(const std::vector<Finding>& findings) {
    json out = json::array();
    for (const auto& f : findings)
        out.push_back({{"severity", f.severity == Severity::Violation ? "violation" : "warning"},
                       {"path", f.path},
                       {"message", f.message}});
    return out;
}

json report_document(const Scenario& s, const Evaluation& ev, const std::string& timestamp) {
    return {{"tool", {{"name", "slb-decider"}, {"version", tool_version()}}},
            {"generated_at", timestamp},
            {"scenario", to_json(s)},
            {"cashflows", to_json(ev.cashflows)},
            {"decision", to_json(ev.report)}};
}

std::string dump_document(const json& j) { return j.dump(2) + "\n"; }

namespace {

std::string money(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%18.2f", v);
    return buf;
}

std::string number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%14.6g", v);
    return buf;
}

std::string dashboard(const DecisionReport& r) {
    std::string out = "  id   holds         lhs            rhs          margin\n";
    for (const auto& c : r.conditions) {
        out += "  " + std::string(to_string(c.id)) + "   " + (c.holds ? "yes  " : "no   ") +
               number(c.lhs) + " " + number(c.rhs) + " " + number(c.margin) + "\n";
    }
    return out;
}

}  // namespace

std::string render_report(const Scenario& s, const Evaluation& ev) {
    const auto& r = ev.report;
    std::string out = "Scenario: " + (s.meta.name.empty() ? std::string("(unnamed)") : s.meta.name) +
                      " [" + std::string(to_string(s.deal.classification)) + " lease]\n\n";
    out += "Cash flows (PV)\n";
    out += "  L_s " + money(ev.cashflows.lease_pv) + "\n";
    out += "  I   " + money(ev.cashflows.interest_pv) + "\n";
    out += "  D   " + money(ev.cashflows.depreciation_pv) + "\n";
    out += "  TV  " + money(ev.cashflows.terminal_value) + "\n\n";
    out += "N_sl " + money(r.n_sl.value) + "\n";
    for (const auto& c : r.n_sl.components) out += "    " + money(c.value) + "  " + c.label + "\n";
    out += "N_b  " + money(r.n_b.value) + "\n";
    for (const auto& c : r.n_b.components) out += "    " + money(c.value) + "  " + c.label + "\n";
    out += "\nConditions\n" + dashboard(r);
    out += "\nRecommendation: " + std::string(to_string(r.recommendation)) + "\n";
    if (!r.failing.empty()) {
        out += "Failing:";
        for (auto id : r.failing) out += " " + std::string(to_string(id));
        out += "\n";
    }
    for (const auto& w : r.warnings) out += "warning: " + w + "\n";
    return out;
}

std::string render_comparison(const Scenario& s, const Evaluation& ev) {
    const auto& r = ev.report;
    std::string out = (s.meta.name.empty() ? std::string("(unnamed)") : s.meta.name) + "\n\n";
    out += "                    sale-leaseback            borrow\n";
    out += "  net position  " + money(r.n_sl.value) + "  " + money(r.n_b.value) + "\n";
    out += "  difference    " + money(r.n_sl.value - r.n_b.value) + "  (N_sl - N_b)\n\n";
    out += "Borrow instead of sale-leaseback (B1-B6) / sale-leaseback over nothing (S1-S7)\n";
    out += dashboard(r);
    out += "\nRecommendation: " + std::string(to_string(r.recommendation)) + "\n";
    return out;
}

std::string render_tornado(const std::vector<TornadoRow>& rows) {
    std::string out = "  parameter                    d(N_sl-N_b) low    d(N_sl-N_b) high\n";
    for (const auto& r : rows) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "  %-26s %18.2f %18.2f\n", r.parameter.c_str(), r.d_diff_low,
                      r.d_diff_high);
        out += buf;
    }
    return out;
}

}  // namespace slb
