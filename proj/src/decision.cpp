#include "slb/decision.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace slb {

Money NetPosition::component_sum() const {
    Money total = 0;
    for (const auto& c : components) total += c.value;
    return total;
}

namespace {

void require_classification(const DealParameters& p, LeaseClassification expected) {
    if (p.classification != expected)
        throw InvalidState("net position for a " + std::string(to_string(expected)) +
                           " lease requested on a " + std::string(to_string(p.classification)) +
                           " lease");
}

}  // namespace

NetPosition net_position_slb_capital(const CashflowSummary& cf, const DealParameters& p) {
    require_classification(p, LeaseClassification::Capital);
    const double S = p.sale_price, R_sl = p.txn_cost_slb, R_ts = p.tax_rate_seller_lessee;
    const double L_s = cf.lease_pv, D = cf.depreciation_pv, TV = cf.terminal_value;
    const double P_t = p.p_taxable_income, R_a = p.leverage_benefit, P_dss = p.p_bankrupt_slb;

    const double bracket = (L_s * R_ts) + (D * R_ts * P_t) - L_s + R_a + TV;
    NetPosition n;
    n.value = S * (1 - R_sl) + bracket * (1 - P_dss);
    n.components = {
        {"gross proceeds", S},
        {"transaction cost", -S * R_sl},
        {"lease tax shield", L_s * R_ts},
        {"depreciation tax shield", D * R_ts * P_t},
        {"rent burden", -L_s},
        {"leverage term", R_a},
        {"terminal value", TV},
        {"survival scaling", -bracket * P_dss},
    };
    return n;
}

NetPosition net_position_slb_operating(const CashflowSummary& cf, const DealParameters& p) {
    require_classification(p, LeaseClassification::Operating);
    const double S = p.sale_price, R_sl = p.txn_cost_slb, R_ts = p.tax_rate_seller_lessee;
    const double L_s = cf.lease_pv, R_a = p.leverage_benefit, P_dss = p.p_bankrupt_slb;

    const double bracket = (L_s * R_ts) - L_s + R_a;
    NetPosition n;
    n.value = S * (1 - R_sl) + bracket * (1 - P_dss);
    n.components = {
        {"gross proceeds", S},
        {"transaction cost", -S * R_sl},
        {"lease tax shield", L_s * R_ts},
        {"rent burden", -L_s},
        {"leverage term", R_a},
        {"survival scaling", -bracket * P_dss},
    };
    return n;
}

NetPosition net_position_slb(const CashflowSummary& cf, const DealParameters& p) {
    return p.classification == LeaseClassification::Capital ? net_position_slb_capital(cf, p)
                                                            : net_position_slb_operating(cf, p);
}

NetPosition net_position_borrow(const CashflowSummary& cf, const DealParameters& p) {
    const double P = p.loan_principal, R_ltc = p.txn_cost_loan, I = cf.interest_pv;
    const double R_ts = p.tax_rate_seller_lessee, R_dlev = p.leverage_penalty_rate;
    const double DC = p.debt_to_capital, TC = p.total_capital, P_dsb = p.p_bankrupt_borrow;

    const double bracket =
        (I * R_ts) - (R_dlev * DC * TC) + (R_ts * R_dlev * DC * TC) - I * (1 - R_ts);
    NetPosition n;
    n.value = P * (1 - R_ltc) + bracket * (1 - P_dsb);
    n.components = {
        {"gross proceeds", P},
        {"transaction cost", -P * R_ltc},
        {"interest tax shield", I * R_ts},
        {"leverage cost", -(R_dlev * DC * TC)},
        {"leverage cost tax shield", R_ts * R_dlev * DC * TC},
        {"after-tax interest", -I * (1 - R_ts)},
        {"survival scaling", -bracket * P_dsb},
    };
    return n;
}

std::string_view to_string(ConditionId id) {
    static constexpr std::array<std::string_view, kConditionCount> names = {
        "B1", "B2", "B3", "B4", "B5", "B6", "S1", "S2", "S3", "S4", "S5", "S6", "S7"};
    return names[static_cast<std::size_t>(id)];
}

std::string_view to_string(Recommendation r) {
    switch (r) {
        case Recommendation::Borrow: return "Borrow";
        case Recommendation::SaleLeaseback: return "SaleLeaseback";
        case Recommendation::NoAction: return "NoAction";
        case Recommendation::Indeterminate: return "Indeterminate";
    }
    return "Indeterminate";
}

namespace {

ConditionResult single(ConditionId id, Inequality ineq,
                       std::vector<std::pair<std::string, double>> inputs) {
    ConditionResult r;
    r.id = id;
    r.holds = ineq.holds();
    r.lhs = ineq.lhs;
    r.rhs = ineq.rhs;
    r.margin = ineq.margin();
    r.parts = {ineq};
    r.inputs = std::move(inputs);
    return r;
}

// Both parts must hold; the part with the smaller margin is reported.
ConditionResult conjunction(ConditionId id, Inequality first, Inequality second,
                            std::vector<std::pair<std::string, double>> inputs) {
    ConditionResult r;
    r.id = id;
    r.holds = first.holds() && second.holds();
    const Inequality& binding = !(second.margin() >= first.margin()) ? second : first;
    r.lhs = binding.lhs;
    r.rhs = binding.rhs;
    r.margin = binding.margin();
    r.parts = {first, second};
    r.inputs = std::move(inputs);
    return r;
}

// Derivative lookups against named curves at the deal's own coordinates.
class CurveProbe {
public:
    CurveProbe(const CurveSet& curves, const ConditionOptions& options)
        : curves_(curves), step_(options.fd_step) {}

    double value(std::string_view name, double x) const { return curves_.require(name)(x); }
    double first(std::string_view name, double x) const { return d1(curves_.require(name), x, step_); }
    double third(std::string_view name, double x) const { return d3(curves_.require(name), x, step_); }

private:
    const CurveSet& curves_;
    std::optional<double> step_;
};

constexpr const char* kUnitsNote =
    "mixes annual rates with currency amounts; evaluated exactly as printed";

ConditionResult fd_dc_condition(ConditionId id, const CurveProbe& probe, const DealParameters& p,
                                std::string_view numerator, std::string_view bound) {
    const double DC = p.debt_to_capital;
    const double top = probe.first(numerator, DC);
    const double floor = probe.first(bound, DC);
    return single(id, {std::max(floor, 1.0), top},
                  {{"DC", DC},
                   {"d/dDC " + std::string(numerator), top},
                   {"d/dDC " + std::string(bound), floor}});
}

}  // namespace

std::vector<ConditionResult> eval_borrow_conditions(const CashflowSummary& cf,
                                                    const DealParameters& p,
                                                    const CurveSet& curves,
                                                    const ConditionOptions& options) {
    const CurveProbe probe(curves, options);
    const bool capital = p.classification == LeaseClassification::Capital;
    const double S = p.sale_price, P = p.loan_principal;
    const double R_ts = p.tax_rate_seller_lessee, R_f = p.firm_borrow_cost;
    const double R_s = p.implicit_lease_rate, R_sl = p.txn_cost_slb;
    const double R_ltc = p.txn_cost_loan, R_dlev = p.leverage_penalty_rate;
    const double DC = p.debt_to_capital, TC = p.total_capital;
    const double D = capital ? cf.depreciation_pv : 0.0;

    const double n_sl = net_position_slb(cf, p).value;
    const double n_b = net_position_borrow(cf, p).value;

    std::vector<ConditionResult> out;
    out.reserve(kBorrowConditionCount);

    auto b1 = single(ConditionId::B1,
                     {std::max(R_f * (1 - R_ts) + R_ltc * P + R_dlev * DC * TC, 0.0),
                      R_s * (1 - R_ts) - D * R_ts + R_sl * S},
                     {{"R_f", R_f}, {"R_ts", R_ts}, {"R_ltc", R_ltc}, {"P", P}, {"R_dlev", R_dlev},
                      {"DC", DC}, {"TC", TC}, {"R_s", R_s}, {"D", D}, {"R_sl", R_sl}, {"S", S}});
    b1.notes.push_back(kUnitsNote);
    b1.notes.push_back("R_r read as R_f; R_i read as R_ltc beside P and as R_dlev beside DC*TC");
    out.push_back(std::move(b1));

    out.push_back(single(ConditionId::B2, {n_sl, n_b}, {{"N_sl", n_sl}, {"N_b", n_b}}));

    const double R_ba = p.borrow_cost_after, R_bb = p.borrow_cost_before;
    auto b3 = single(ConditionId::B3, {std::max((R_ba - R_bb) - R_sl, 0.0), R_ltc + R_dlev},
                     {{"R_ba", R_ba}, {"R_bb", R_bb}, {"R_sl", R_sl}, {"R_ltc", R_ltc},
                      {"R_dlev", R_dlev}});
    b3.notes.push_back("printed as [R_i + R_i]; read as R_ltc + R_dlev. Alternative reading 2*R_ltc = " +
                       std::to_string(2 * R_ltc));
    out.push_back(std::move(b3));

    auto b4 = fd_dc_condition(ConditionId::B4, probe, p, "R_f_of_DC", "R_dlev_of_DC");
    b4.notes.push_back("R_r read as R_f; R_i read as R_dlev");
    out.push_back(std::move(b4));

    const double dRs_dS = probe.first("R_s_of_S", S);
    const double dRf_dP = probe.first("R_f_of_P", P);
    auto b5 = single(ConditionId::B5, {std::max(dRf_dP, 1.0), dRs_dS},
                     {{"S", S}, {"P", P}, {"d/dS R_s_of_S", dRs_dS}, {"d/dP R_f_of_P", dRf_dP}});
    b5.notes.push_back("R_r read as R_f");
    out.push_back(std::move(b5));

    out.push_back(single(ConditionId::B6, {std::max(n_sl, 0.0), n_b}, {{"N_sl", n_sl}, {"N_b", n_b}}));
    return out;
}

std::vector<ConditionResult> eval_slb_vs_nothing_conditions(const CashflowSummary& cf,
                                                            const DealParameters& p,
                                                            const CurveSet& curves,
                                                            const ConditionOptions& options) {
    const CurveProbe probe(curves, options);
    const bool capital = p.classification == LeaseClassification::Capital;
    const double S = p.sale_price, L_s = cf.lease_pv, R_sl = p.txn_cost_slb;
    const double R_ts = p.tax_rate_seller_lessee, DC = p.debt_to_capital, TC = p.total_capital;
    const double TV = capital ? cf.terminal_value : 0.0;
    const double P_dss = p.p_bankrupt_slb;
    const double R_s = p.implicit_lease_rate, R_bb = p.borrow_cost_before, R_f = p.firm_borrow_cost;

    std::vector<ConditionResult> out;
    out.reserve(kConditionCount - kBorrowConditionCount);

    const double r_a = probe.value("r_a_of_DC", DC);
    auto s1 = single(ConditionId::S1,
                     {0.0, S - L_s - R_sl * S - (L_s * R_ts) - r_a * DC * TC + TV * (1 - P_dss)},
                     {{"S", S}, {"L_s", L_s}, {"R_sl", R_sl}, {"R_ts", R_ts}, {"r_a", r_a},
                      {"DC", DC}, {"TC", TC}, {"TV", TV}, {"P_dss", P_dss}});
    s1.notes.push_back(kUnitsNote);
    s1.notes.push_back("R_a read as the rate r_a_of_DC at the deal's DC, not the PV leverage_benefit");
    out.push_back(std::move(s1));

    auto s2 = fd_dc_condition(ConditionId::S2, probe, p, "R_f_of_DC", "R_dlev_of_DC");
    s2.notes.push_back("R_r read as R_f; R_i read as R_dlev");
    out.push_back(std::move(s2));

    auto s3 = fd_dc_condition(ConditionId::S3, probe, p, "r_a_of_DC", "R_dlev_of_DC");
    s3.notes.push_back("R_i read as R_dlev");
    out.push_back(std::move(s3));

    out.push_back(single(ConditionId::S4, {R_s * R_ts, R_bb * R_ts},
                         {{"R_s", R_s}, {"R_bb", R_bb}, {"R_ts", R_ts}}));

    {
        const double bb1 = probe.first("R_bb_of_DC", DC), ba1 = probe.first("R_ba_of_DC", DC);
        const double bb3 = probe.third("R_bb_of_DC", DC), ba3 = probe.third("R_ba_of_DC", DC);
        auto s5 = conjunction(ConditionId::S5, {std::max(ba1, 1.0), bb1}, {std::max(ba3, 1.0), bb3},
                              {{"DC", DC},
                               {"d/dDC R_bb_of_DC", bb1},
                               {"d/dDC R_ba_of_DC", ba1},
                               {"d3/dDC3 R_bb_of_DC", bb3},
                               {"d3/dDC3 R_ba_of_DC", ba3}});
        s5.notes.push_back("R_ab read as R_ba");
        out.push_back(std::move(s5));
    }
    {
        const double bb1 = probe.first("R_bb_of_DC", DC), pd1 = probe.first("P_dss_of_DC", DC);
        const double bb3 = probe.third("R_bb_of_DC", DC), pd3 = probe.third("P_dss_of_DC", DC);
        out.push_back(conjunction(ConditionId::S6, {std::max(pd1, 1.0), bb1},
                                  {std::max(pd3, 1.0), bb3},
                                  {{"DC", DC},
                                   {"d/dDC P_dss_of_DC", pd1},
                                   {"d/dDC R_bb_of_DC", bb1},
                                   {"d3/dDC3 P_dss_of_DC", pd3},
                                   {"d3/dDC3 R_bb_of_DC", bb3}}));
    }
    {
        const double by_bb1 = probe.first("P_dss_of_Rbb", R_bb);
        const double by_f1 = probe.first("P_dss_of_Rf", R_f);
        const double by_bb3 = probe.third("P_dss_of_Rbb", R_bb);
        const double by_f3 = probe.third("P_dss_of_Rf", R_f);
        auto s7 = conjunction(ConditionId::S7, {std::max(by_bb1, 1.0), by_f1},
                              {std::max(by_bb3, 1.0), by_f3},
                              {{"R_bb", R_bb},
                               {"R_f", R_f},
                               {"d/dR_bb P_dss_of_Rbb", by_bb1},
                               {"d/dR_f P_dss_of_Rf", by_f1},
                               {"d3/dR_bb3 P_dss_of_Rbb", by_bb3},
                               {"d3/dR_f3 P_dss_of_Rf", by_f3}});
        s7.notes.push_back("R_r read as R_f");
        out.push_back(std::move(s7));
    }
    return out;
}

Recommendation recommend(const ConditionPattern& holds, Money n_sl, Money n_b) {
    bool all_borrow = true;
    bool all_slb = true;
    for (std::size_t i = 0; i < kConditionCount; ++i) {
        if (holds[i]) continue;
        (i < kBorrowConditionCount ? all_borrow : all_slb) = false;
    }
    if (all_borrow) return Recommendation::Borrow;
    if (all_slb) return Recommendation::SaleLeaseback;
    if (n_sl <= 0 && n_b <= 0) return Recommendation::NoAction;
    return Recommendation::Indeterminate;
}

DecisionReport recommend(NetPosition n_sl, NetPosition n_b, std::vector<ConditionResult> conditions,
                         std::vector<std::string> warnings, double tax_rate_differential) {
    ConditionPattern pattern;
    for (const auto& c : conditions) pattern[static_cast<std::size_t>(c.id)] = c.holds;

    DecisionReport report;
    report.recommendation = recommend(pattern, n_sl.value, n_b.value);
    if (report.recommendation == Recommendation::Indeterminate ||
        report.recommendation == Recommendation::NoAction) {
        for (const auto& c : conditions)
            if (!c.holds) report.failing.push_back(c.id);
    }
    report.n_sl = std::move(n_sl);
    report.n_b = std::move(n_b);
    report.conditions = std::move(conditions);
    report.warnings = std::move(warnings);
    report.tax_rate_differential = tax_rate_differential;
    return report;
}

const std::vector<std::pair<std::string, std::string>>& symbol_mapping() {
    static const std::vector<std::pair<std::string, std::string>> mapping = {
        {"R_r", "R_f (firm_borrow_cost)"},
        {"R_i as a transaction cost of P", "R_ltc (txn_cost_loan)"},
        {"R_i as a leverage-driven rate", "R_dlev (leverage_penalty_rate)"},
        {"R_ab", "R_ba (borrow_cost_after)"},
        {"R_a in N_sl", "leverage_benefit, a PV amount"},
        {"R_a in S1 and S3", "curve r_a_of_DC"},
    };
    return mapping;
}

Evaluation evaluate(const DealParameters& p, const CurveSet& curves,
                    const ConditionOptions& options) {
    const auto findings = require_valid(p);

    Evaluation ev;
    ev.cashflows = derive_cashflows(p);

    std::vector<std::string> warnings;
    for (const auto& f : findings) warnings.push_back(f.path + ": " + f.message);
    const double differential = p.tax_rate_seller_lessee - p.tax_rate_buyer_lessor;
    if (p.classification == LeaseClassification::Operating && differential == 0)
        warnings.push_back("no tax-rate differential: operating-lease viability depends on R_ts - R_tb");

    auto conditions = eval_borrow_conditions(ev.cashflows, p, curves, options);
    auto slb = eval_slb_vs_nothing_conditions(ev.cashflows, p, curves, options);
    conditions.insert(conditions.end(), std::make_move_iterator(slb.begin()),
                      std::make_move_iterator(slb.end()));

    ev.report = recommend(net_position_slb(ev.cashflows, p), net_position_borrow(ev.cashflows, p),
                          std::move(conditions), std::move(warnings), differential);
    return ev;
}

}  // namespace slb
