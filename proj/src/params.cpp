#include "slb/params.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace slb {

namespace {

constexpr std::array<ParameterSpec, 25> kParameters = {{
    {"sale_price", "S", ParameterKind::Money},
    {"loan_principal", "P", ParameterKind::Money},
    {"monthly_rent", "rent", ParameterKind::Money},
    {"leverage_benefit", "R_a", ParameterKind::Money},
    {"total_capital", "TC", ParameterKind::Money},
    {"terminal_value_pv", "TV", ParameterKind::Money},
    {"depreciation_basis", "basis", ParameterKind::Money},
    {"implicit_lease_rate", "R_s", ParameterKind::Rate},
    {"borrow_cost_before", "R_bb", ParameterKind::Rate},
    {"borrow_cost_after", "R_ba", ParameterKind::Rate},
    {"firm_borrow_cost", "R_f", ParameterKind::Rate},
    {"tax_rate_seller_lessee", "R_ts", ParameterKind::Rate},
    {"tax_rate_buyer_lessor", "R_tb", ParameterKind::Rate},
    {"txn_cost_slb", "R_sl", ParameterKind::Rate},
    {"txn_cost_loan", "R_ltc", ParameterKind::Rate},
    {"leverage_penalty_rate", "R_dlev", ParameterKind::Rate},
    {"debt_to_capital", "DC", ParameterKind::Rate},
    {"discount_rate", "discount", ParameterKind::Rate},
    {"p_bankrupt_slb", "P_dss", ParameterKind::Probability},
    {"p_bankrupt_borrow", "P_dsb", ParameterKind::Probability},
    {"p_lessor_bankrupt_slb", "P_dls", ParameterKind::Probability},
    {"p_lessor_bankrupt_borrow", "P_dlb", ParameterKind::Probability},
    {"p_taxable_income", "P_t", ParameterKind::Probability},
    {"term_months", "term", ParameterKind::Count},
    {"depreciation_life_months", "life", ParameterKind::Count},
}};

// Pointer-to-member access for the plain double fields.
double DealParameters::*plain_field(std::string_view name) {
    if (name == "sale_price") return &DealParameters::sale_price;
    if (name == "loan_principal") return &DealParameters::loan_principal;
    if (name == "monthly_rent") return &DealParameters::monthly_rent;
    if (name == "leverage_benefit") return &DealParameters::leverage_benefit;
    if (name == "total_capital") return &DealParameters::total_capital;
    if (name == "terminal_value_pv") return &DealParameters::terminal_value_pv;
    if (name == "implicit_lease_rate") return &DealParameters::implicit_lease_rate;
    if (name == "borrow_cost_before") return &DealParameters::borrow_cost_before;
    if (name == "borrow_cost_after") return &DealParameters::borrow_cost_after;
    if (name == "firm_borrow_cost") return &DealParameters::firm_borrow_cost;
    if (name == "tax_rate_seller_lessee") return &DealParameters::tax_rate_seller_lessee;
    if (name == "tax_rate_buyer_lessor") return &DealParameters::tax_rate_buyer_lessor;
    if (name == "txn_cost_slb") return &DealParameters::txn_cost_slb;
    if (name == "txn_cost_loan") return &DealParameters::txn_cost_loan;
    if (name == "leverage_penalty_rate") return &DealParameters::leverage_penalty_rate;
    if (name == "debt_to_capital") return &DealParameters::debt_to_capital;
    if (name == "p_bankrupt_slb") return &DealParameters::p_bankrupt_slb;
    if (name == "p_bankrupt_borrow") return &DealParameters::p_bankrupt_borrow;
    if (name == "p_lessor_bankrupt_slb") return &DealParameters::p_lessor_bankrupt_slb;
    if (name == "p_lessor_bankrupt_borrow") return &DealParameters::p_lessor_bankrupt_borrow;
    if (name == "p_taxable_income") return &DealParameters::p_taxable_income;
    return nullptr;
}

}  // namespace

std::span<const ParameterSpec> scalar_parameters() { return kParameters; }

const ParameterSpec& find_parameter(std::string_view key) {
    for (const auto& spec : kParameters)
        if (spec.name == key || spec.symbol == key) return spec;
    throw InvalidInput("unknown parameter \"" + std::string(key) + "\"");
}

double get_parameter(const DealParameters& p, const ParameterSpec& spec) {
    if (auto field = plain_field(spec.name)) return p.*field;
    if (spec.name == "depreciation_basis") return p.effective_depreciation_basis();
    if (spec.name == "discount_rate") return p.effective_discount_rate();
    if (spec.name == "term_months") return static_cast<double>(p.term_months);
    if (spec.name == "depreciation_life_months")
        return static_cast<double>(p.effective_depreciation_life());
    throw InvalidInput("unknown parameter \"" + std::string(spec.name) + "\"");
}

void set_parameter(DealParameters& p, const ParameterSpec& spec, double value) {
    if (auto field = plain_field(spec.name)) {
        p.*field = value;
        return;
    }
    auto as_count = [value] {
        return std::max<Index>(1, static_cast<Index>(std::floor(value + 0.5)));
    };
    if (spec.name == "depreciation_basis") p.depreciation_basis = value;
    else if (spec.name == "discount_rate") p.discount_rate = value;
    else if (spec.name == "term_months") p.term_months = as_count();
    else if (spec.name == "depreciation_life_months") p.depreciation_life_months = as_count();
    else throw InvalidInput("unknown parameter \"" + std::string(spec.name) + "\"");
}

}  // namespace slb
