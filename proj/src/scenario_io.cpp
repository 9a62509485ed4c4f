#include "slb/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <initializer_list>

namespace slb {

using nlohmann::json;

namespace {

std::string join(const std::string& path, std::string_view key) {
    return path.empty() ? std::string(key) : path + "." + std::string(key);
}

std::string index_path(const std::string& path, std::size_t i) {
    return path + "[" + std::to_string(i) + "]";
}

const json& require_object(const json& j, const std::string& path) {
    if (!j.is_object()) throw SchemaError(path.empty() ? "$" : path, "expected an object");
    return j;
}

void reject_unknown(const json& obj, const std::string& path,
                    std::initializer_list<std::string_view> allowed) {
    for (const auto& [key, _] : obj.items())
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw SchemaError(join(path, key), "unknown field");
}

const json* field(const json& obj, std::string_view key, const std::string& path, bool required) {
    auto it = obj.find(key);
    if (it == obj.end() || (!required && it->is_null())) {
        if (required) throw SchemaError(join(path, key), "required field missing");
        return nullptr;
    }
    return &*it;
}

double number_at(const json& v, const std::string& path) {
    if (!v.is_number()) throw SchemaError(path, "expected a number");
    return v.get<double>();
}

double number(const json& obj, std::string_view key, const std::string& path) {
    return number_at(*field(obj, key, path, true), join(path, key));
}

std::optional<double> optional_number(const json& obj, std::string_view key, const std::string& path) {
    if (auto v = field(obj, key, path, false)) return number_at(*v, join(path, key));
    return std::nullopt;
}

Index integer_at(const json& v, const std::string& path) {
    if (v.is_number_integer()) return v.get<Index>();
    if (v.is_number_float()) {
        const double d = v.get<double>();
        if (std::isfinite(d) && d == std::floor(d) && std::abs(d) < 9e15) return static_cast<Index>(d);
    }
    throw SchemaError(path, "expected an integer");
}

std::string string_at(const json& v, const std::string& path) {
    if (!v.is_string()) throw SchemaError(path, "expected a string");
    return v.get<std::string>();
}

std::string optional_string(const json& obj, std::string_view key, const std::string& path) {
    if (auto v = field(obj, key, path, false)) return string_at(*v, join(path, key));
    return {};
}

Eigen::VectorXd vector_at(const json& obj, std::string_view key, const std::string& path) {
    const std::string p = join(path, key);
    const json& arr = *field(obj, key, path, true);
    if (!arr.is_array()) throw SchemaError(p, "expected an array of numbers");
    Eigen::VectorXd out(static_cast<Index>(arr.size()));
    for (std::size_t i = 0; i < arr.size(); ++i) out(static_cast<Index>(i)) = number_at(arr[i], index_path(p, i));
    return out;
}

SampledCurve curve_from_json(const json& j, const std::string& path) {
    require_object(j, path);
    reject_unknown(j, path, {"xs", "ys", "interpolation"});
    auto xs = vector_at(j, "xs", path);
    auto ys = vector_at(j, "ys", path);
    Interpolation interp = Interpolation::Cubic;
    if (auto v = field(j, "interpolation", path, false)) {
        try {
            interp = interpolation_from(string_at(*v, join(path, "interpolation")));
        } catch (const InvalidInput& e) {
            throw SchemaError(join(path, "interpolation"), e.what());
        }
    }
    try {
        return SampledCurve(std::move(xs), std::move(ys), interp);
    } catch (const InvalidInput& e) {
        throw SchemaError(path, e.what());
    }
}

CurveSet curves_from_json(const json& j, const std::string& path) {
    require_object(j, path);
    CurveSet set;
    for (const auto& [name, value] : j.items()) {
        if (!is_known_curve(name)) throw SchemaError(join(path, name), "unknown curve name");
        set.set(name, curve_from_json(value, join(path, name)));
    }
    return set;
}

ScenarioOptions options_from_json(const json& j, const std::string& path) {
    require_object(j, path);
    reject_unknown(j, path, {"mode", "breakeven_tolerance", "breakeven_max_iterations", "fd_step"});
    ScenarioOptions o;
    if (auto v = field(j, "mode", path, false)) {
        o.mode = string_at(*v, join(path, "mode"));
        if (o.mode != "verbatim") throw SchemaError(join(path, "mode"), "only \"verbatim\" is supported");
    }
    if (auto v = optional_number(j, "breakeven_tolerance", path)) {
        if (!(*v > 0)) throw SchemaError(join(path, "breakeven_tolerance"), "must be > 0");
        o.breakeven_tolerance = *v;
    }
    if (auto v = field(j, "breakeven_max_iterations", path, false)) {
        const Index n = integer_at(*v, join(path, "breakeven_max_iterations"));
        if (n < 1 || n > 100000) throw SchemaError(join(path, "breakeven_max_iterations"), "must be in [1, 100000]");
        o.breakeven_max_iterations = static_cast<int>(n);
    }
    if (auto v = optional_number(j, "fd_step", path)) {
        if (!(*v > 0)) throw SchemaError(join(path, "fd_step"), "must be > 0");
        o.fd_step = v;
    }
    return o;
}

ScenarioMeta meta_from_json(const json& j, const std::string& path) {
    require_object(j, path);
    reject_unknown(j, path, {"name", "lifecycle_stage", "notes"});
    return {optional_string(j, "name", path), optional_string(j, "lifecycle_stage", path),
            optional_string(j, "notes", path)};
}

}  // namespace

DealParameters deal_from_json(const json& j, const std::string& path) {
    require_object(j, path);
    reject_unknown(j, path,
                   {"sale_price", "loan_principal", "monthly_rent", "term_months",
                    "implicit_lease_rate", "borrow_cost_before", "borrow_cost_after",
                    "firm_borrow_cost", "tax_rate_seller_lessee", "tax_rate_buyer_lessor",
                    "txn_cost_slb", "txn_cost_loan", "leverage_benefit", "leverage_penalty_rate",
                    "debt_to_capital", "total_capital", "terminal_value_pv", "p_bankrupt_slb",
                    "p_bankrupt_borrow", "p_lessor_bankrupt_slb", "p_lessor_bankrupt_borrow",
                    "p_taxable_income", "classification", "depreciation_basis",
                    "depreciation_life_months", "discount_rate"});
    DealParameters p;
    p.sale_price = number(j, "sale_price", path);
    p.loan_principal = number(j, "loan_principal", path);
    p.monthly_rent = number(j, "monthly_rent", path);
    p.term_months = integer_at(*field(j, "term_months", path, true), join(path, "term_months"));
    p.implicit_lease_rate = number(j, "implicit_lease_rate", path);
    p.borrow_cost_before = number(j, "borrow_cost_before", path);
    p.borrow_cost_after = number(j, "borrow_cost_after", path);
    p.firm_borrow_cost = number(j, "firm_borrow_cost", path);
    p.tax_rate_seller_lessee = number(j, "tax_rate_seller_lessee", path);
    p.tax_rate_buyer_lessor = number(j, "tax_rate_buyer_lessor", path);
    p.txn_cost_slb = number(j, "txn_cost_slb", path);
    p.txn_cost_loan = number(j, "txn_cost_loan", path);
    p.leverage_benefit = number(j, "leverage_benefit", path);
    p.leverage_penalty_rate = number(j, "leverage_penalty_rate", path);
    p.debt_to_capital = number(j, "debt_to_capital", path);
    p.total_capital = number(j, "total_capital", path);
    p.terminal_value_pv = number(j, "terminal_value_pv", path);
    p.p_bankrupt_slb = number(j, "p_bankrupt_slb", path);
    p.p_bankrupt_borrow = number(j, "p_bankrupt_borrow", path);
    p.p_lessor_bankrupt_slb = number(j, "p_lessor_bankrupt_slb", path);
    p.p_lessor_bankrupt_borrow = number(j, "p_lessor_bankrupt_borrow", path);
    p.p_taxable_income = number(j, "p_taxable_income", path);
    {
        const std::string cpath = join(path, "classification");
        try {
            p.classification =
                lease_classification_from(string_at(*field(j, "classification", path, true), cpath));
        } catch (const InvalidInput& e) {
            throw SchemaError(cpath, e.what());
        }
    }
    p.depreciation_basis = optional_number(j, "depreciation_basis", path);
    if (auto v = field(j, "depreciation_life_months", path, false))
        p.depreciation_life_months = integer_at(*v, join(path, "depreciation_life_months"));
    p.discount_rate = optional_number(j, "discount_rate", path);
    return p;
}

Scenario scenario_from_json_unvalidated(const json& j, const std::string& path) {
    require_object(j, path);
    reject_unknown(j, path, {"schema_version", "meta", "deal", "curves", "options"});
    Scenario s;
    const std::string vpath = join(path, "schema_version");
    s.schema_version = string_at(*field(j, "schema_version", path, true), vpath);
    if (s.schema_version != kSchemaVersion)
        throw SchemaError(vpath, "unsupported schema version \"" + s.schema_version + "\"");
    if (auto v = field(j, "meta", path, false)) s.meta = meta_from_json(*v, join(path, "meta"));
    s.deal = deal_from_json(*field(j, "deal", path, true), join(path, "deal"));
    if (auto v = field(j, "curves", path, false)) s.curves = curves_from_json(*v, join(path, "curves"));
    if (auto v = field(j, "options", path, false)) s.options = options_from_json(*v, join(path, "options"));
    return s;
}

Scenario scenario_from_json(const json& j, const std::string& path) {
    Scenario s = scenario_from_json_unvalidated(j, path);
    auto findings = validate(s.deal);
    if (has_violations(findings)) {
        if (!path.empty())
            for (auto& f : findings) f.path = path + "." + f.path;
        throw ValidationError(std::move(findings));
    }
    return s;
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        std::size_t line = 1, column = 1;
        const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t i = 0; i < end; ++i) {
            if (text[i] == '\n') ++line, column = 1;
            else ++column;
        }
        throw SyntaxError(line, column,
                          "JSON syntax error at line " + std::to_string(line) + ", column " +
                              std::to_string(column));
    }
}

Scenario parse_scenario(std::string_view text) { return scenario_from_json(parse_json(text)); }

json to_json(const DealParameters& p) {
    json j = {
        {"sale_price", p.sale_price},
        {"loan_principal", p.loan_principal},
        {"monthly_rent", p.monthly_rent},
        {"term_months", p.term_months},
        {"implicit_lease_rate", p.implicit_lease_rate},
        {"borrow_cost_before", p.borrow_cost_before},
        {"borrow_cost_after", p.borrow_cost_after},
        {"firm_borrow_cost", p.firm_borrow_cost},
        {"tax_rate_seller_lessee", p.tax_rate_seller_lessee},
        {"tax_rate_buyer_lessor", p.tax_rate_buyer_lessor},
        {"txn_cost_slb", p.txn_cost_slb},
        {"txn_cost_loan", p.txn_cost_loan},
        {"leverage_benefit", p.leverage_benefit},
        {"leverage_penalty_rate", p.leverage_penalty_rate},
        {"debt_to_capital", p.debt_to_capital},
        {"total_capital", p.total_capital},
        {"terminal_value_pv", p.terminal_value_pv},
        {"p_bankrupt_slb", p.p_bankrupt_slb},
        {"p_bankrupt_borrow", p.p_bankrupt_borrow},
        {"p_lessor_bankrupt_slb", p.p_lessor_bankrupt_slb},
        {"p_lessor_bankrupt_borrow", p.p_lessor_bankrupt_borrow},
        {"p_taxable_income", p.p_taxable_income},
        {"classification", std::string(to_string(p.classification))},
    };
    if (p.depreciation_basis) j["depreciation_basis"] = *p.depreciation_basis;
    if (p.depreciation_life_months) j["depreciation_life_months"] = *p.depreciation_life_months;
    if (p.discount_rate) j["discount_rate"] = *p.discount_rate;
    return j;
}

json to_json(const Scenario& s) {
    json curves = json::object();
    for (const auto& [name, c] : s.curves.curves()) {
        curves[name] = {
            {"xs", std::vector<double>(c.xs().data(), c.xs().data() + c.xs().size())},
            {"ys", std::vector<double>(c.ys().data(), c.ys().data() + c.ys().size())},
            {"interpolation", std::string(to_string(c.interpolation()))},
        };
    }
    json options = {
        {"mode", s.options.mode},
        {"breakeven_tolerance", s.options.breakeven_tolerance},
        {"breakeven_max_iterations", s.options.breakeven_max_iterations},
    };
    if (s.options.fd_step) options["fd_step"] = *s.options.fd_step;
    return {
        {"schema_version", s.schema_version},
        {"meta",
         {{"name", s.meta.name}, {"lifecycle_stage", s.meta.lifecycle_stage}, {"notes", s.meta.notes}}},
        {"deal", to_json(s.deal)},
        {"curves", curves},
        {"options", options},
    };
}

namespace {

void write_canonical(const json& j, std::string& out, int depth) {
    const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
    const std::string close(static_cast<std::size_t>(2 * depth), ' ');
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (const auto& [key, value] : j.items()) {  // std::map order: sorted
                if (!first) out += ",\n";
                first = false;
                out += pad + json(key).dump(-1, ' ', false) + ": ";
                write_canonical(value, out, depth + 1);
            }
            out += "\n" + close + "}";
            return;
        }
        case json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) out += ", ";
                write_canonical(j[i], out, depth + 1);
            }
            out += "]";
            return;
        }
        case json::value_t::number_float: {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", j.get<double>());
            std::string s = buf;
            // keep reals recognisable as reals
            if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
            out += s;
            return;
        }
        default:
            out += j.dump(-1, ' ', false);
    }
}

}  // namespace

std::string canonical_dump(const json& j) {
    std::string out;
    write_canonical(j, out, 0);
    out += "\n";
    return out;
}

std::string serialize_scenario(const Scenario& s) { return canonical_dump(to_json(s)); }

}  // namespace slb
