#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "slb/cashflow.hpp"
#include "slb/error.hpp"

namespace slb {

using Money = double;

enum class LeaseClassification { Capital, Operating };

std::string_view to_string(LeaseClassification c);
LeaseClassification lease_classification_from(std::string_view s);

/// Every scalar input of the sale-leaseback / borrow comparison. Annual
/// rates are nominal fractions; probabilities live in [0, 1].
struct DealParameters {
    Money sale_price = 0;        // S
    Money loan_principal = 0;    // P
    Money monthly_rent = 0;
    Index term_months = 0;       // shared by the lease and the loan

    double implicit_lease_rate = 0;     // R_s
    double borrow_cost_before = 0;      // R_bb
    double borrow_cost_after = 0;       // R_ba
    double firm_borrow_cost = 0;        // R_f, the loan's rate
    double tax_rate_seller_lessee = 0;  // R_ts
    double tax_rate_buyer_lessor = 0;   // R_tb
    double txn_cost_slb = 0;            // R_sl, fraction of S
    double txn_cost_loan = 0;           // R_ltc, fraction of P

    Money leverage_benefit = 0;         // R_a, already a PV amount
    double leverage_penalty_rate = 0;   // R_dlev
    double debt_to_capital = 0;         // DC
    Money total_capital = 0;            // TC
    Money terminal_value_pv = 0;        // TV

    double p_bankrupt_slb = 0;            // P_dss
    double p_bankrupt_borrow = 0;         // P_dsb
    double p_lessor_bankrupt_slb = 0;     // P_dls, reported only
    double p_lessor_bankrupt_borrow = 0;  // P_dlb, reported only
    double p_taxable_income = 0;          // P_t

    LeaseClassification classification = LeaseClassification::Capital;

    std::optional<Money> depreciation_basis;       // defaults to S
    std::optional<Index> depreciation_life_months; // defaults to the term
    std::optional<double> discount_rate;           // annual; defaults to R_ba

    Money effective_depreciation_basis() const { return depreciation_basis.value_or(sale_price); }
    Index effective_depreciation_life() const { return depreciation_life_months.value_or(term_months); }
    double effective_discount_rate() const { return discount_rate.value_or(borrow_cost_after); }

    bool operator==(const DealParameters&) const = default;
};

/// Present values feeding the net-position formulas, with the schedules
/// behind them.
struct CashflowSummary {
    Money lease_pv = 0;         // L_s
    Money interest_pv = 0;      // I
    Money depreciation_pv = 0;  // D
    Money terminal_value = 0;   // TV, passed through
    Rate discount;              // monthly
    AmortizationSchedule<double> amortization;
    PaymentStream<double> depreciation;  // truncated at the lease term
};

/// Empty iff every invariant holds. Values sitting exactly on a strict
/// bound come back as warnings.
std::vector<Finding> validate(const DealParameters& params);

bool has_violations(const std::vector<Finding>& findings);

/// Throws ValidationError when validate() reports a violation; returns the
/// warnings otherwise.
std::vector<Finding> require_valid(const DealParameters& params);

CashflowSummary derive_cashflows(const DealParameters& params);

}  // namespace slb
