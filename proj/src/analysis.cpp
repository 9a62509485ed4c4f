#include "slb/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <thread>

namespace slb {

NetPositions net_positions(const DealParameters& p) {
    const auto cf = derive_cashflows(p);
    return {net_position_slb(cf, p).value, net_position_borrow(cf, p).value};
}

namespace {

constexpr std::array<std::string_view, 4> kBreakevenVariables = {
    "sale_price", "tax_rate_seller_lessee", "monthly_rent", "p_bankrupt_slb"};

}  // namespace

bool is_breakeven_variable(std::string_view variable) {
    try {
        const auto& spec = find_parameter(variable);
        return std::find(kBreakevenVariables.begin(), kBreakevenVariables.end(), spec.name) !=
               kBreakevenVariables.end();
    } catch (const InvalidInput&) {
        return false;
    }
}

BreakevenResult breakeven(const DealParameters& p, std::string_view variable, double lo, double hi,
                          const SolverOptions& options) {
    if (!is_breakeven_variable(variable))
        throw InvalidInput("breakeven variable must be one of S, R_ts, monthly_rent, P_dss");
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
        throw InvalidInput("breakeven bracket needs finite lo < hi");
    const auto& spec = find_parameter(variable);

    DealParameters work = p;
    auto at = [&](double x) {
        set_parameter(work, spec, x);
        return net_positions(work);
    };
    auto tolerance = [&](const NetPositions& n) {
        return options.tolerance * std::max(1.0, std::abs(n.n_b));
    };

    BreakevenResult result{std::string(spec.name), 0, 0, 0, lo, hi};
    double a = lo, b = hi;
    const NetPositions at_lo = at(a), at_hi = at(b);
    double g_a = at_lo.n_sl - at_lo.n_b;
    const double g_b = at_hi.n_sl - at_hi.n_b;
    if (!std::isfinite(g_a) || !std::isfinite(g_b))
        throw SolverError("N_sl - N_b is not finite at the bracket ends");
    if (g_a == 0) return result.value = a, result;
    if (g_b == 0) return result.value = b, result;
    if (std::signbit(g_a) == std::signbit(g_b)) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "no sign change of N_sl - N_b over [%.17g, %.17g]: g(lo) = %.17g, g(hi) = %.17g",
                      lo, hi, g_a, g_b);
        throw BracketError(g_a, g_b, buf);
    }

    double best_x = std::abs(g_a) <= std::abs(g_b) ? a : b;
    double best_g = std::abs(g_a) <= std::abs(g_b) ? g_a : g_b;
    double best_tol = tolerance(std::abs(g_a) <= std::abs(g_b) ? at_lo : at_hi);
    for (int it = 1; it <= options.max_iterations; ++it) {
        const double mid = a + (b - a) / 2;
        if (mid <= a || mid >= b) break;  // bracket exhausted at machine precision
        const NetPositions n = at(mid);
        const double g = n.n_sl - n.n_b;
        result.iterations = it;
        if (std::abs(g) < std::abs(best_g)) best_x = mid, best_g = g, best_tol = tolerance(n);
        if (std::abs(g) < tolerance(n)) break;
        if (std::signbit(g) == std::signbit(g_a)) a = mid, g_a = g;
        else b = mid;
    }
    if (!(std::abs(best_g) < best_tol))
        throw SolverError("breakeven did not converge: |N_sl - N_b| = " + std::to_string(std::abs(best_g)));
    result.value = best_x;
    result.residual = best_g;
    return result;
}

std::vector<double> linear_grid(double from, double to, int steps) {
    if (steps < 1) throw InvalidInput("sweep needs at least one grid point");
    if (!std::isfinite(from) || !std::isfinite(to)) throw InvalidInput("sweep bounds must be finite");
    std::vector<double> grid(static_cast<std::size_t>(steps));
    if (steps == 1) {
        grid[0] = from;
        return grid;
    }
    for (int i = 0; i < steps; ++i)
        grid[static_cast<std::size_t>(i)] = i == steps - 1 ? to : from + (to - from) * i / (steps - 1);
    return grid;
}

namespace {

SweepRow sweep_point(const DealParameters& base, const ParameterSpec& spec, const CurveSet& curves,
                     const ConditionOptions& options, double x) {
    SweepRow row;
    row.x = x;
    DealParameters p = base;
    set_parameter(p, spec, x);
    try {
        const auto ev = evaluate(p, curves, options);
        row.n_sl = ev.report.n_sl.value;
        row.n_b = ev.report.n_b.value;
        row.recommendation = ev.report.recommendation;
    } catch (const Error& e) {
        row.error = e.what();
    }
    return row;
}

}  // namespace

std::vector<SweepRow> sweep(const DealParameters& p, const CurveSet& curves,
                            const ConditionOptions& options, std::string_view variable,
                            std::span<const double> grid) {
    if (grid.empty()) throw InvalidInput("sweep grid is empty");
    const auto& spec = find_parameter(variable);

    std::vector<SweepRow> rows(grid.size());
    const std::size_t workers = std::clamp<std::size_t>(
        grid.size() / 64, 1, std::max(1u, std::thread::hardware_concurrency()));
    auto work = [&](std::size_t first) {
        for (std::size_t i = first; i < grid.size(); i += workers)
            rows[i] = sweep_point(p, spec, curves, options, grid[i]);
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    }

    std::optional<std::size_t> best_sl, best_b;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!rows[i].error.empty()) continue;
        if (!best_sl || *rows[i].n_sl > *rows[*best_sl].n_sl) best_sl = i;
        if (!best_b || *rows[i].n_b > *rows[*best_b].n_b) best_b = i;
    }
    if (best_sl) rows[*best_sl].argmax_n_sl = true;
    if (best_b) rows[*best_b].argmax_n_b = true;
    return rows;
}

namespace {

double rank_key(double swing) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", swing);
    return std::strtod(buf, nullptr);
}

}  // namespace

std::vector<TornadoRow> tornado(const DealParameters& p, double perturbation) {
    if (!(perturbation > 0 && perturbation < 1))
        throw InvalidInput("tornado perturbation must lie in (0, 1)");
    const NetPositions base = net_positions(p);

    std::vector<TornadoRow> rows;
    for (const auto& spec : scalar_parameters()) {
        TornadoRow row;
        row.parameter = std::string(spec.name);
        row.base = get_parameter(p, spec);

        auto shifted = [&](double factor, double& value, Money& d_sl, Money& d_b, Money& d_diff) {
            DealParameters q = p;
            double x = row.base * factor;
            if (spec.kind == ParameterKind::Probability) x = std::clamp(x, 0.0, 1.0);
            set_parameter(q, spec, x);
            value = get_parameter(q, spec);
            const NetPositions n = net_positions(q);
            d_sl = n.n_sl - base.n_sl;
            d_b = n.n_b - base.n_b;
            d_diff = (n.n_sl - n.n_b) - (base.n_sl - base.n_b);
        };
        shifted(1 - perturbation, row.low, row.d_n_sl_low, row.d_n_b_low, row.d_diff_low);
        shifted(1 + perturbation, row.high, row.d_n_sl_high, row.d_n_b_high, row.d_diff_high);
        row.swing = std::max(std::abs(row.d_diff_low), std::abs(row.d_diff_high));
        rows.push_back(std::move(row));
    }
    std::stable_sort(rows.begin(), rows.end(), [](const TornadoRow& a, const TornadoRow& b) {
        const double ka = rank_key(a.swing), kb = rank_key(b.swing);
        if (ka != kb) return ka > kb;
        return a.parameter < b.parameter;
    });
    return rows;
}

}  // namespace slb
