#include <gtest/gtest.h>

#include <algorithm>

#include "slb/deal.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace slb;
using slb::testing::random_deal;
using slb::testing::rel_close;

namespace {

bool has_finding(const std::vector<Finding>& fs, Severity sev, const std::string& path,
                 const std::string& message) {
    return std::any_of(fs.begin(), fs.end(), [&](const Finding& f) {
        return f.severity == sev && f.path == path && f.message == message;
    });
}

DealParameters desk1() { return slb::testing::load_desk1().deal; }

}  // namespace

TEST(Validate, Desk1IsClean) { EXPECT_TRUE(validate(desk1()).empty()); }

TEST(Validate, RandomDrawsAreValid) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) EXPECT_FALSE(has_violations(validate(random_deal(rng))));
}

TEST(Validate, DebtToCapitalAboveOneIsViolation) {
    auto p = desk1();
    p.debt_to_capital = 1.2;
    const auto fs = validate(p);
    EXPECT_TRUE(has_finding(fs, Severity::Violation, "deal.debt_to_capital", "DC out of (0,1)"));
    EXPECT_THROW(require_valid(p), ValidationError);
}

TEST(Validate, StrictBoundIsWarning) {
    auto p = desk1();
    p.p_bankrupt_slb = 0.0;
    const auto fs = validate(p);
    EXPECT_TRUE(has_finding(fs, Severity::Warning, "deal.p_bankrupt_slb", "P_dss at strict bound"));
    EXPECT_FALSE(has_violations(fs));
    EXPECT_EQ(require_valid(p).size(), 1u);
}

TEST(Validate, CollectsEveryViolation) {
    auto p = desk1();
    p.sale_price = -1;
    p.term_months = 0;
    p.tax_rate_seller_lessee = 1.5;
    p.total_capital = std::nan("");
    try {
        require_valid(p);
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        EXPECT_EQ(e.findings().size(), 4u);
        EXPECT_NE(std::string(e.what()).find("deal.sale_price"), std::string::npos);
    }
}

TEST(Validate, OptionalFieldsCheckedOnlyWhenSet) {
    auto p = desk1();
    p.depreciation_life_months = 0;
    EXPECT_TRUE(has_finding(validate(p), Severity::Violation, "deal.depreciation_life_months", "must be >= 1"));
    p.depreciation_life_months.reset();
    p.discount_rate = 1.5;
    EXPECT_TRUE(has_violations(validate(p)));
}

TEST(LeaseClassification, RoundTrip) {
    EXPECT_EQ(lease_classification_from("capital"), LeaseClassification::Capital);
    EXPECT_EQ(lease_classification_from(to_string(LeaseClassification::Operating)),
              LeaseClassification::Operating);
    EXPECT_THROW(lease_classification_from("finance"), InvalidInput);
}

TEST(DeriveCashflows, Desk1MatchesGolden) {
    const auto cf = derive_cashflows(desk1());
    const auto g = slb::testing::golden("desk1_expected.json")["cashflows"];
    EXPECT_TRUE(rel_close(cf.lease_pv, g["L_s"], 1e-12));
    EXPECT_TRUE(rel_close(cf.interest_pv, g["I"], 1e-12));
    EXPECT_TRUE(rel_close(cf.depreciation_pv, g["D"], 1e-12));
    EXPECT_EQ(cf.terminal_value, g["TV"].get<double>());
}

TEST(DeriveCashflows, DeterministicAndPure) {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 50; ++i) {
        const auto p = random_deal(rng);
        const auto a = derive_cashflows(p), b = derive_cashflows(p);
        EXPECT_EQ(a.lease_pv, b.lease_pv);
        EXPECT_EQ(a.interest_pv, b.interest_pv);
        EXPECT_EQ(a.depreciation_pv, b.depreciation_pv);
        EXPECT_TRUE(a.depreciation == b.depreciation);
    }
}

TEST(DeriveCashflows, DefaultsFollowSalePriceTermAndAfterRate) {
    auto p = desk1();
    p.depreciation_basis.reset();
    p.depreciation_life_months.reset();
    const auto cf = derive_cashflows(p);
    EXPECT_DOUBLE_EQ(cf.discount.value, p.borrow_cost_after / 12);
    EXPECT_EQ(cf.depreciation.size(), p.term_months);
    EXPECT_TRUE(rel_close(cf.depreciation.amounts().sum(), p.sale_price, 1e-12));
}

TEST(DeriveCashflows, DepreciationStopsAtLeaseTerm) {
    auto p = desk1();
    p.depreciation_life_months = 600;
    EXPECT_EQ(derive_cashflows(p).depreciation.size(), p.term_months);
    p.depreciation_life_months = 60;
    EXPECT_EQ(derive_cashflows(p).depreciation.size(), 60);
}

TEST(DeriveCashflows, ZeroDiscountConservation) {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 200; ++i) {
        auto p = random_deal(rng);
        p.discount_rate = 0.0;
        const auto cf = derive_cashflows(p);
        double interest = 0;
        for (const auto& r : cf.amortization) interest += r.interest;
        const double months = static_cast<double>(
            std::min(p.term_months, p.effective_depreciation_life()));
        EXPECT_TRUE(rel_close(cf.lease_pv, p.monthly_rent * p.term_months, 1e-9));
        EXPECT_TRUE(rel_close(cf.interest_pv, interest, 1e-9));
        EXPECT_TRUE(rel_close(cf.depreciation_pv,
                              p.effective_depreciation_basis() / p.effective_depreciation_life() * months,
                              1e-9));
    }
}

TEST(DeriveCashflows, LeasePvIncreasesInRentAndTerm) {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 200; ++i) {
        auto p = random_deal(rng);
        const double base = derive_cashflows(p).lease_pv;
        auto more_rent = p;
        more_rent.monthly_rent *= 1.01;
        EXPECT_GT(derive_cashflows(more_rent).lease_pv, base);
        auto longer = p;
        longer.term_months += 1;
        EXPECT_GT(derive_cashflows(longer).lease_pv, base);
    }
}

TEST(DeriveCashflows, InterestIncreasesInPrincipalAndRate) {
    std::mt19937_64 rng(19);
    for (int i = 0; i < 200; ++i) {
        auto p = random_deal(rng);
        const double base = derive_cashflows(p).interest_pv;
        auto bigger = p;
        bigger.loan_principal *= 1.01;
        EXPECT_GT(derive_cashflows(bigger).interest_pv, base);
        auto dearer = p;
        dearer.firm_borrow_cost += 0.001;
        EXPECT_GT(derive_cashflows(dearer).interest_pv, base);
    }
}

TEST(DeriveCashflows, TerminalValuePassesThrough) {
    auto p = desk1();
    p.terminal_value_pv = 1'234'567.89;
    EXPECT_EQ(derive_cashflows(p).terminal_value, 1'234'567.89);
}

TEST(MiniDeal, ProducesTheWorkedInputs) {
    const auto cf = derive_cashflows(slb::testing::mini_deal());
    EXPECT_NEAR(cf.lease_pv, 50, 1e-12);
    EXPECT_NEAR(cf.depreciation_pv, 20, 1e-12);
    EXPECT_NEAR(cf.interest_pv, 30, 1e-9);
}
