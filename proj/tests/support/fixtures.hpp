#pragma once

// Shared inputs for the test binaries: the DESK-1 scenario, golden files and
// a generator of random valid deals.

#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <json.hpp>

#include "slb/analysis.hpp"
#include "slb/scenario.hpp"

namespace slb::testing {

inline std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string desk1_path() { return std::string(SLB_SOURCE_DIR) + "/scenarios/desk1.json"; }

inline Scenario load_desk1() { return parse_scenario(read_text(desk1_path())); }

inline nlohmann::json golden(const std::string& file) {
    return nlohmann::json::parse(read_text(std::string(SLB_GOLDEN_DIR) + "/" + file));
}

/// Same ranges as the oracle's draws.
inline DealParameters random_deal(std::mt19937_64& rng) {
    auto u = [&](double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); };
    auto n = [&](int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); };
    DealParameters p;
    const double S = u(1e5, 1e8);
    p.sale_price = S;
    p.loan_principal = S * u(0.3, 1.2);
    p.monthly_rent = S * u(0.002, 0.015);
    p.term_months = n(1, 360);
    p.implicit_lease_rate = u(0.001, 0.3);
    p.borrow_cost_before = u(0.001, 0.3);
    p.borrow_cost_after = u(0.001, 0.3);
    p.firm_borrow_cost = u(0.001, 0.3);
    p.tax_rate_seller_lessee = u(0.05, 0.5);
    p.tax_rate_buyer_lessor = u(0.05, 0.5);
    p.txn_cost_slb = u(0.001, 0.1);
    p.txn_cost_loan = u(0.001, 0.1);
    p.leverage_benefit = S * u(0.0, 0.05);
    p.leverage_penalty_rate = u(0.001, 0.05);
    p.debt_to_capital = u(0.05, 0.95);
    p.total_capital = S * u(1.0, 20.0);
    p.terminal_value_pv = S * u(0.0, 1.0);
    p.p_bankrupt_slb = u(0.001, 0.999);
    p.p_bankrupt_borrow = u(0.001, 0.999);
    p.p_lessor_bankrupt_slb = u(0.001, 0.999);
    p.p_lessor_bankrupt_borrow = u(0.001, 0.999);
    p.p_taxable_income = u(0.001, 0.999);
    p.classification = n(0, 1) ? LeaseClassification::Capital : LeaseClassification::Operating;
    if (n(0, 1)) p.depreciation_basis = S * u(0.2, 1.0);
    if (n(0, 1)) p.depreciation_life_months = n(1, 480);
    if (n(0, 1)) p.discount_rate = u(0.0, 0.2);
    return p;
}

/// Random cubic or linear curves whose grids cover the deal's own
/// coordinates, so every condition can be evaluated.
inline CurveSet random_curves(const DealParameters& p, std::mt19937_64& rng) {
    auto u = [&](double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); };
    auto make = [&](double lo, double hi, int n, bool cubic) {
        const double c0 = u(-1, 1), c1 = u(-3, 3), c2 = u(-3, 3), c3 = cubic ? u(-5, 5) : 0.0;
        Eigen::VectorXd xs = Eigen::VectorXd::LinSpaced(n, lo, hi), ys(n);
        const double mid = 0.5 * (lo + hi), scale = hi - lo;
        for (int i = 0; i < n; ++i) {
            const double t = (xs(i) - mid) / scale;
            ys(i) = c0 + c1 * t + c2 * t * t + c3 * t * t * t;
        }
        return SampledCurve(xs, ys, cubic ? Interpolation::Cubic : Interpolation::Linear);
    };
    CurveSet c;
    for (const char* name : {"R_bb_of_DC", "P_dss_of_DC", "R_ba_of_DC", "R_f_of_DC", "R_dlev_of_DC"})
        c.set(name, make(0.0, 1.0, 11, true));
    c.set("r_a_of_DC", make(0.0, 1.0, 6, false));
    c.set("P_dss_of_Rbb", make(0.0, 0.4, 9, true));
    c.set("P_dss_of_Rf", make(0.0, 0.4, 9, true));
    c.set("R_s_of_S", make(0.5 * p.sale_price, 1.5 * p.sale_price, 7, true));
    c.set("R_f_of_P", make(0.5 * p.loan_principal, 1.5 * p.loan_principal, 7, true));
    return c;
}

/// Random deal, curves, free text and options.
inline Scenario random_scenario(std::mt19937_64& rng) {
    static const char* names[] = {"plain", "Zürich flagship", "東京 store", "quote \" and \\ slash",
                                  "tab\tnewline\n", "emoji \xF0\x9F\x8F\xAC"};
    Scenario s;
    s.deal = random_deal(rng);
    s.curves = random_curves(s.deal, rng);
    s.meta.name = names[rng() % 6];
    s.meta.lifecycle_stage = "Stage one - the decision to lease";
    s.meta.notes = names[rng() % 6];
    s.options.breakeven_tolerance = std::uniform_real_distribution<double>(1e-12, 1e-3)(rng);
    s.options.breakeven_max_iterations = 1 + static_cast<int>(rng() % 500);
    if (rng() % 2) s.options.fd_step = std::uniform_real_distribution<double>(1e-6, 1e-2)(rng);
    return s;
}

/// Twelve-month deal at zero discount with L_s = 50, D = 20, TV = 10 and
/// total interest 30, so N_sl(S) = 0.9 S - 11 and N_b = 83.
inline DealParameters mini_deal() {
    DealParameters p;
    p.sale_price = 100;
    p.txn_cost_slb = 0.1;
    p.monthly_rent = 50.0 / 12.0;
    p.term_months = 12;
    p.discount_rate = 0.0;
    p.tax_rate_seller_lessee = 0.4;
    p.tax_rate_buyer_lessor = 0.3;
    p.depreciation_basis = 20;
    p.depreciation_life_months = 12;
    p.p_taxable_income = 0.5;
    p.leverage_benefit = 5;
    p.terminal_value_pv = 10;
    p.p_bankrupt_slb = 0;
    p.loan_principal = 100;
    p.txn_cost_loan = 0.05;
    p.leverage_penalty_rate = 0.02;
    p.debt_to_capital = 0.5;
    p.total_capital = 1000;
    p.p_bankrupt_borrow = 0;
    p.implicit_lease_rate = 0.08;
    p.borrow_cost_before = 0.07;
    p.borrow_cost_after = 0.07;
    p.p_lessor_bankrupt_slb = 0.01;
    p.p_lessor_bankrupt_borrow = 0.01;

    // firm_borrow_cost such that twelve months of interest on 100 total 30
    double lo = 0.0, hi = 2.0;
    for (int i = 0; i < 200; ++i) {
        p.firm_borrow_cost = 0.5 * (lo + hi);
        const double interest = derive_cashflows(p).interest_pv;
        (interest < 30 ? lo : hi) = p.firm_borrow_cost;
    }
    return p;
}

}  // namespace slb::testing
