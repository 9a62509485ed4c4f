#pragma once

// What-if tooling over the two net positions: indifference points,
// one-parameter sweeps and tornado rankings.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "slb/decision.hpp"
#include "slb/params.hpp"

namespace slb {

struct NetPositions {
    Money n_sl = 0;
    Money n_b = 0;
};

/// N_sl and N_b straight from the formulas, skipping validation and the
/// condition sets. Out-of-bounds parameter values are evaluated as given.
NetPositions net_positions(const DealParameters& p);

struct SolverOptions {
    double tolerance = 1e-6;  // relative to max(1, |N_b|)
    int max_iterations = 200;
};

struct BreakevenResult {
    std::string variable;
    double value = 0;
    Money residual = 0;  // N_sl - N_b at value
    int iterations = 0;
    double lo = 0;
    double hi = 0;
};

/// Bisection for N_sl(x) = N_b(x) over [lo, hi] where x is one of
/// S, R_ts, monthly_rent, P_dss. Throws BracketError when N_sl - N_b has
/// the same sign at both ends and SolverError when it fails to converge.
BreakevenResult breakeven(const DealParameters& p, std::string_view variable, double lo, double hi,
                          const SolverOptions& options = {});

bool is_breakeven_variable(std::string_view variable);

struct SweepRow {
    double x = 0;
    std::optional<Money> n_sl;
    std::optional<Money> n_b;
    std::optional<Recommendation> recommendation;
    std::string error;  // non-empty when this grid point failed
    bool argmax_n_sl = false;
    bool argmax_n_b = false;
};

/// `steps` evenly spaced points from `from` to `to` inclusive.
std::vector<double> linear_grid(double from, double to, int steps);

/// One row per grid point, in grid order. Points that fail validation or
/// evaluation keep their row with `error` set. The first maximum of each
/// net position over the successful rows is flagged.
std::vector<SweepRow> sweep(const DealParameters& p, const CurveSet& curves,
                            const ConditionOptions& options, std::string_view variable,
                            std::span<const double> grid);

struct TornadoRow {
    std::string parameter;
    double base = 0;
    double low = 0;
    double high = 0;
    Money d_n_sl_low = 0;
    Money d_n_sl_high = 0;
    Money d_n_b_low = 0;
    Money d_n_b_high = 0;
    Money d_diff_low = 0;  // change in N_sl - N_b
    Money d_diff_high = 0;
    Money swing = 0;       // max(|d_diff_low|, |d_diff_high|)
};

/// Every scalar parameter moved by -/+ `perturbation` (relative), ranked by
/// swing of N_sl - N_b. Swings equal to 12 significant digits tie and are
/// ordered by parameter name.
std::vector<TornadoRow> tornado(const DealParameters& p, double perturbation = 0.10);

}  // namespace slb
