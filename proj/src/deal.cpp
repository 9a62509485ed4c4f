#include "slb/deal.hpp"

#include <cmath>
#include <string>

namespace slb {

namespace {

std::string join_messages(const std::vector<Finding>& findings) {
    std::string out = "deal parameters failed validation";
    for (const auto& f : findings) {
        if (f.severity != Severity::Violation) continue;
        out += "; " + f.path + ": " + f.message;
    }
    return out;
}

class Checker {
public:
    void finite(std::string_view field, double v) {
        if (!std::isfinite(v)) violation(field, "must be a finite number");
    }

    void positive(std::string_view field, double v) {
        if (!std::isfinite(v) || !(v > 0)) violation(field, "must be > 0");
    }

    void nonnegative(std::string_view field, double v) {
        if (!std::isfinite(v) || !(v >= 0)) violation(field, "must be >= 0");
    }

    // The open interval (0,1); endpoints are admitted with a warning.
    void unit_interval(std::string_view field, std::string_view symbol, double v) {
        if (!std::isfinite(v) || v < 0 || v > 1) {
            violation(field, std::string(symbol) + " out of (0,1)");
        } else if (v == 0 || v == 1) {
            warning(field, std::string(symbol) + " at strict bound");
        }
    }

    void count(std::string_view field, Index v) {
        if (v < 1) violation(field, "must be >= 1");
    }

    std::vector<Finding> take() { return std::move(findings_); }

private:
    void violation(std::string_view field, std::string msg) {
        findings_.push_back({Severity::Violation, "deal." + std::string(field), std::move(msg)});
    }
    void warning(std::string_view field, std::string msg) {
        findings_.push_back({Severity::Warning, "deal." + std::string(field), std::move(msg)});
    }

    std::vector<Finding> findings_;
};

}  // namespace

ValidationError::ValidationError(std::vector<Finding> findings)
    : Error(join_messages(findings)), findings_(std::move(findings)) {}

std::string_view to_string(LeaseClassification c) {
    return c == LeaseClassification::Capital ? "capital" : "operating";
}

LeaseClassification lease_classification_from(std::string_view s) {
    if (s == "capital") return LeaseClassification::Capital;
    if (s == "operating") return LeaseClassification::Operating;
    throw InvalidInput("lease classification must be \"capital\" or \"operating\"");
}

std::vector<Finding> validate(const DealParameters& p) {
    Checker c;
    c.positive("sale_price", p.sale_price);
    c.positive("loan_principal", p.loan_principal);
    c.nonnegative("monthly_rent", p.monthly_rent);
    c.count("term_months", p.term_months);

    c.unit_interval("implicit_lease_rate", "R_s", p.implicit_lease_rate);
    c.unit_interval("borrow_cost_before", "R_bb", p.borrow_cost_before);
    c.unit_interval("borrow_cost_after", "R_ba", p.borrow_cost_after);
    c.unit_interval("firm_borrow_cost", "R_f", p.firm_borrow_cost);
    c.unit_interval("tax_rate_seller_lessee", "R_ts", p.tax_rate_seller_lessee);
    c.unit_interval("tax_rate_buyer_lessor", "R_tb", p.tax_rate_buyer_lessor);
    c.unit_interval("txn_cost_slb", "R_sl", p.txn_cost_slb);
    c.unit_interval("txn_cost_loan", "R_ltc", p.txn_cost_loan);
    c.unit_interval("leverage_penalty_rate", "R_dlev", p.leverage_penalty_rate);
    c.unit_interval("debt_to_capital", "DC", p.debt_to_capital);

    c.finite("leverage_benefit", p.leverage_benefit);
    c.positive("total_capital", p.total_capital);
    c.finite("terminal_value_pv", p.terminal_value_pv);

    c.unit_interval("p_bankrupt_slb", "P_dss", p.p_bankrupt_slb);
    c.unit_interval("p_bankrupt_borrow", "P_dsb", p.p_bankrupt_borrow);
    c.unit_interval("p_lessor_bankrupt_slb", "P_dls", p.p_lessor_bankrupt_slb);
    c.unit_interval("p_lessor_bankrupt_borrow", "P_dlb", p.p_lessor_bankrupt_borrow);
    c.unit_interval("p_taxable_income", "P_t", p.p_taxable_income);

    if (p.depreciation_basis) c.nonnegative("depreciation_basis", *p.depreciation_basis);
    if (p.depreciation_life_months) c.count("depreciation_life_months", *p.depreciation_life_months);
    if (p.discount_rate) c.unit_interval("discount_rate", "discount rate", *p.discount_rate);
    return c.take();
}

bool has_violations(const std::vector<Finding>& findings) {
    for (const auto& f : findings)
        if (f.severity == Severity::Violation) return true;
    return false;
}

std::vector<Finding> require_valid(const DealParameters& params) {
    auto findings = validate(params);
    if (has_violations(findings)) throw ValidationError(std::move(findings));
    return findings;
}

CashflowSummary derive_cashflows(const DealParameters& p) {
    CashflowSummary cf;
    cf.discount = Rate::annual(p.effective_discount_rate()).to_monthly();
    cf.lease_pv = pv_level_stream(p.monthly_rent, cf.discount, p.term_months);

    cf.amortization = amortization_schedule(p.loan_principal, Rate::annual(p.firm_borrow_cost),
                                            p.term_months);
    cf.interest_pv = pv_stream(interest_stream(cf.amortization), cf.discount);

    cf.depreciation = straight_line_depreciation(p.effective_depreciation_basis(),
                                                 p.effective_depreciation_life())
                          .truncated(p.term_months);
    cf.depreciation_pv = pv_stream(cf.depreciation, cf.discount);

    cf.terminal_value = p.terminal_value_pv;
    return cf;
}

}  // namespace slb
