#pragma once

#include <array>
#include <bitset>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "slb/curve.hpp"
#include "slb/deal.hpp"

namespace slb {

struct Component {
    std::string label;
    Money value;
};

/// A net position and the additive pieces it is made of.
struct NetPosition {
    Money value = 0;
    std::vector<Component> components;

    Money component_sum() const;
};

/// N_sl for a lease booked as a capital lease:
///   S(1 - R_sl) + [L_s R_ts + D R_ts P_t - L_s + R_a + TV](1 - P_dss)
NetPosition net_position_slb_capital(const CashflowSummary& cf, const DealParameters& p);

/// N_sl for an operating lease: the depreciation shield and the terminal
/// value reversion drop out of the bracket.
NetPosition net_position_slb_operating(const CashflowSummary& cf, const DealParameters& p);

/// Dispatches on p.classification.
NetPosition net_position_slb(const CashflowSummary& cf, const DealParameters& p);

/// N_b = P(1 - R_ltc)
///     + [I R_ts - R_dlev DC TC + R_ts R_dlev DC TC - I(1 - R_ts)](1 - P_dsb)
NetPosition net_position_borrow(const CashflowSummary& cf, const DealParameters& p);

enum class ConditionId { B1, B2, B3, B4, B5, B6, S1, S2, S3, S4, S5, S6, S7 };

inline constexpr std::size_t kConditionCount = 13;
inline constexpr std::size_t kBorrowConditionCount = 6;

std::string_view to_string(ConditionId id);

/// One strict inequality, normalised to `lhs < rhs`.
struct Inequality {
    double lhs = 0;
    double rhs = 0;

    double margin() const { return rhs - lhs; }
    bool holds() const { return lhs < rhs; }
};

struct ConditionResult {
    ConditionId id{};
    bool holds = false;
    double lhs = 0;
    double rhs = 0;
    double margin = 0;  // rhs - lhs; positive iff the condition holds
    std::vector<Inequality> parts;  // two entries for the "...; and ..." conditions
    std::vector<std::pair<std::string, double>> inputs;
    std::vector<std::string> notes;
};

struct ConditionOptions {
    std::optional<double> fd_step;  // default: each curve's span / 1000
};

/// B1..B6: the firm should borrow rather than do the sale-leaseback.
std::vector<ConditionResult> eval_borrow_conditions(const CashflowSummary& cf,
                                                    const DealParameters& p,
                                                    const CurveSet& curves,
                                                    const ConditionOptions& options = {});

/// S1..S7: the sale-leaseback beats doing nothing.
std::vector<ConditionResult> eval_slb_vs_nothing_conditions(const CashflowSummary& cf,
                                                            const DealParameters& p,
                                                            const CurveSet& curves,
                                                            const ConditionOptions& options = {});

enum class Recommendation { Borrow, SaleLeaseback, NoAction, Indeterminate };

std::string_view to_string(Recommendation r);

/// Bit i is condition i in ConditionId order (B1 = bit 0, S7 = bit 12).
using ConditionPattern = std::bitset<kConditionCount>;

/// Borrow when B1-B6 all hold; else SaleLeaseback when S1-S7 all hold; else
/// NoAction when both net positions are <= 0; else Indeterminate.
Recommendation recommend(const ConditionPattern& holds, Money n_sl, Money n_b);

struct DecisionReport {
    NetPosition n_sl;
    NetPosition n_b;
    std::vector<ConditionResult> conditions;  // B1..B6 then S1..S7
    Recommendation recommendation = Recommendation::Indeterminate;
    std::vector<ConditionId> failing;
    std::vector<std::string> warnings;
    double tax_rate_differential = 0;  // R_ts - R_tb
};

/// Assembles the report from evaluated net positions and conditions.
DecisionReport recommend(NetPosition n_sl, NetPosition n_b, std::vector<ConditionResult> conditions,
                         std::vector<std::string> warnings, double tax_rate_differential);

/// How the undefined symbols in the printed conditions are read.
const std::vector<std::pair<std::string, std::string>>& symbol_mapping();

struct Evaluation {
    CashflowSummary cashflows;
    DecisionReport report;
};

/// Validates, derives cash flows, evaluates both condition sets and
/// recommends. Throws ValidationError, ConfigurationError, DomainError.
Evaluation evaluate(const DealParameters& p, const CurveSet& curves,
                    const ConditionOptions& options = {});

}  // namespace slb
