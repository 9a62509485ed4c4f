#include <gtest/gtest.h>

#include <chrono>

#include "slb/analysis.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace slb;
using slb::testing::load_desk1;
using slb::testing::mini_deal;
using slb::testing::rel_close;

TEST(Breakeven, MiniExampleSalePrice) {
    const auto start = std::chrono::steady_clock::now();
    const auto r = breakeven(mini_deal(), "S", 50, 200);
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    EXPECT_NEAR(r.value, 94.0 / 0.9, 1e-4);
    EXPECT_EQ(r.variable, "sale_price");
    EXPECT_LT(elapsed, 1.0);
    const auto n = net_positions([&] { auto p = mini_deal(); p.sale_price = r.value; return p; }());
    EXPECT_LT(std::abs(n.n_sl - n.n_b), 1e-6 * std::max(1.0, std::abs(n.n_b)));
    EXPECT_EQ(r.residual, n.n_sl - n.n_b);
}

TEST(Breakeven, Desk1SalePriceMatchesOracle) {
    const auto s = load_desk1();
    const auto r = breakeven(s.deal, "sale_price", 1e6, 2e7);
    const double expected = slb::testing::golden("desk1_expected.json")["breakeven_sale_price"];
    const auto n = net_positions(s.deal);
    EXPECT_LT(std::abs(r.residual), 1e-6 * std::max(1.0, std::abs(n.n_b)));
    EXPECT_NEAR(r.value, expected, 1e-6 * std::abs(n.n_b) / 0.98 + 1e-6);
}

TEST(Breakeven, ResidualWithinToleranceForEveryVariable) {
    const auto s = load_desk1();
    struct Case { const char* var; double lo, hi; };
    for (const Case c : {Case{"S", 1e6, 2e7}, Case{"R_ts", 0.0, 1.0}, Case{"monthly_rent", 0, 2e5},
                         Case{"P_dss", 0.0, 1.0}}) {
        try {
            const auto r = breakeven(s.deal, c.var, c.lo, c.hi);
            auto p = s.deal;
            set_parameter(p, find_parameter(c.var), r.value);
            const auto n = net_positions(p);
            EXPECT_LT(std::abs(n.n_sl - n.n_b), 1e-6 * std::max(1.0, std::abs(n.n_b))) << c.var;
            EXPECT_GE(r.value, c.lo);
            EXPECT_LE(r.value, c.hi);
        } catch (const BracketError&) {
            // a bracket without a sign change is a legitimate outcome here
        }
    }
}

TEST(Breakeven, NoSignChangeExplains) {
    try {
        breakeven(mini_deal(), "S", 200, 300);
        FAIL();
    } catch (const BracketError& e) {
        EXPECT_NE(std::string(e.what()).find("no sign change"), std::string::npos);
        EXPECT_GT(e.g_lo(), 0);
        EXPECT_GT(e.g_hi(), 0);
    }
}

TEST(Breakeven, RejectsBadRequests) {
    EXPECT_THROW(breakeven(mini_deal(), "loan_principal", 0, 1), InvalidInput);
    EXPECT_THROW(breakeven(mini_deal(), "S", 100, 100), InvalidInput);
    EXPECT_THROW(breakeven(mini_deal(), "S", 200, 100), InvalidInput);
    EXPECT_TRUE(is_breakeven_variable("P_dss"));
    EXPECT_FALSE(is_breakeven_variable("nonsense"));
}

TEST(Breakeven, IterationCapIsSolverError) {
    SolverOptions tight{1e-15, 3};
    EXPECT_THROW(breakeven(mini_deal(), "S", 50, 200, tight), SolverError);
}

TEST(LinearGrid, InclusiveEndpoints) {
    const auto g = linear_grid(0, 1, 5);
    ASSERT_EQ(g.size(), 5u);
    EXPECT_EQ(g.front(), 0.0);
    EXPECT_EQ(g[2], 0.5);
    EXPECT_EQ(g.back(), 1.0);
    EXPECT_EQ(linear_grid(3, 9, 1), std::vector<double>{3});
    EXPECT_THROW(linear_grid(0, 1, 0), InvalidInput);
}

TEST(Sweep, SinglePointEqualsEvaluate) {
    const auto s = load_desk1();
    const std::vector<double> grid{s.deal.sale_price};
    const auto rows = sweep(s.deal, s.curves, s.options.conditions(), "S", grid);
    const auto ev = evaluate(s.deal, s.curves, s.options.conditions());
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(*rows[0].n_sl, ev.report.n_sl.value);
    EXPECT_EQ(*rows[0].n_b, ev.report.n_b.value);
    EXPECT_EQ(*rows[0].recommendation, ev.report.recommendation);
    EXPECT_TRUE(rows[0].argmax_n_sl && rows[0].argmax_n_b);
}

TEST(Sweep, LinearInSaleFlagsGridMax) {
    const auto s = load_desk1();
    const auto grid = linear_grid(6e6, 14e6, 9);
    const auto rows = sweep(s.deal, s.curves, s.options.conditions(), "sale_price", grid);
    ASSERT_EQ(rows.size(), 9u);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        EXPECT_EQ(rows[i].x, grid[i]);
        EXPECT_TRUE(rows[i].error.empty()) << rows[i].error;
        EXPECT_EQ(rows[i].argmax_n_sl, i + 1 == rows.size());
    }
    // N_b does not depend on S: every row ties and the first is flagged
    EXPECT_TRUE(rows[0].argmax_n_b);
}

TEST(Sweep, SurvivalSweepIsMonotone) {
    const auto s = load_desk1();
    const auto grid = linear_grid(0, 1, 101);
    const auto rows = sweep(s.deal, s.curves, s.options.conditions(), "P_dss", grid);
    ASSERT_EQ(rows.size(), 101u);
    const auto cf = derive_cashflows(s.deal);
    auto p = s.deal;
    p.p_bankrupt_slb = 0;
    const double bracket = net_position_slb(cf, p).value - p.sale_price * (1 - p.txn_cost_slb);
    ASSERT_NE(bracket, 0);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (bracket > 0) EXPECT_LE(*rows[i].n_sl, *rows[i - 1].n_sl);
        else EXPECT_GE(*rows[i].n_sl, *rows[i - 1].n_sl);
    }
    EXPECT_TRUE(bracket > 0 ? rows.front().argmax_n_sl : rows.back().argmax_n_sl);
}

TEST(Sweep, BadPointsKeepTheirRow) {
    const auto s = load_desk1();
    const std::vector<double> grid{0.3, 0.45, 1.5, 0.6};
    const auto rows = sweep(s.deal, s.curves, s.options.conditions(), "DC", grid);
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_FALSE(rows[2].error.empty());
    EXPECT_FALSE(rows[2].n_sl.has_value());
    EXPECT_TRUE(rows[3].error.empty());
}

TEST(Sweep, ParallelOrderMatchesSequential) {
    const auto s = load_desk1();
    // stays inside the P_dss_of_Rf grid so no point fails
    const auto grid = linear_grid(0.03, 0.19, 1000);
    const auto rows = sweep(s.deal, s.curves, s.options.conditions(), "R_f", grid);
    for (std::size_t i = 0; i < grid.size(); i += 97) {
        ASSERT_TRUE(rows[i].error.empty()) << rows[i].error;
        auto p = s.deal;
        p.firm_borrow_cost = grid[i];
        EXPECT_EQ(*rows[i].n_b, net_positions(p).n_b);
    }
}

TEST(Tornado, SalePriceMovesOnlyNsl) {
    const auto s = load_desk1();
    const auto rows = tornado(s.deal, 0.10);
    const auto it = std::find_if(rows.begin(), rows.end(), [](auto& r) { return r.parameter == "sale_price"; });
    ASSERT_NE(it, rows.end());
    const double expected = 0.1 * s.deal.sale_price * (1 - s.deal.txn_cost_slb);
    EXPECT_TRUE(rel_close(it->d_n_sl_high, expected, 1e-9));
    EXPECT_TRUE(rel_close(it->d_n_sl_low, -expected, 1e-9));
    EXPECT_EQ(it->d_n_b_high, 0.0);
}

TEST(Tornado, UnusedParameterHasNoEffect) {
    const auto rows = tornado(load_desk1().deal, 0.10);
    for (const auto& r : rows) {
        if (r.parameter != "p_lessor_bankrupt_slb" && r.parameter != "p_lessor_bankrupt_borrow") continue;
        EXPECT_EQ(r.d_n_sl_low, 0.0);
        EXPECT_EQ(r.d_n_b_high, 0.0);
        EXPECT_EQ(r.swing, 0.0);
    }
}

TEST(Tornado, Desk1RankingMatchesGolden) {
    const auto rows = tornado(load_desk1().deal, 0.10);
    const auto g = slb::testing::golden("desk1_tornado.json")["rows"];
    ASSERT_EQ(rows.size(), g.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        EXPECT_EQ(rows[i].parameter, g[i]["parameter"].get<std::string>()) << i;
        EXPECT_TRUE(rel_close(rows[i].swing, g[i]["swing"], 1e-9)) << rows[i].parameter;
        EXPECT_TRUE(rel_close(rows[i].low, g[i]["low"], 1e-12));
        EXPECT_TRUE(rel_close(rows[i].high, g[i]["high"], 1e-12));
    }
}

TEST(Tornado, ProbabilitiesClampedAndOrderDeterministic) {
    auto p = load_desk1().deal;
    p.p_bankrupt_slb = 0.95;
    const auto rows = tornado(p, 0.5);
    for (const auto& r : rows) {
        if (r.parameter == "p_bankrupt_slb") EXPECT_EQ(r.high, 1.0);
        if (r.parameter == "term_months") EXPECT_EQ(r.low, 90.0);
    }
    for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_GE(rows[i - 1].swing, rows[i].swing * (1 - 1e-11));
    EXPECT_THROW(tornado(p, 0.0), InvalidInput);
    EXPECT_THROW(tornado(p, 1.0), InvalidInput);
}

TEST(Parameters, LookupBySymbolOrName) {
    EXPECT_EQ(find_parameter("P_dss").name, "p_bankrupt_slb");
    EXPECT_EQ(find_parameter("sale_price").symbol, "S");
    EXPECT_THROW(find_parameter("Q"), InvalidInput);
    EXPECT_EQ(scalar_parameters().size(), 25u);
    auto p = load_desk1().deal;
    p.discount_rate.reset();
    EXPECT_EQ(get_parameter(p, find_parameter("discount_rate")), p.borrow_cost_after);
    set_parameter(p, find_parameter("term"), 0.2);
    EXPECT_EQ(p.term_months, 1);
    set_parameter(p, find_parameter("term"), 36.5);
    EXPECT_EQ(p.term_months, 37);
}
