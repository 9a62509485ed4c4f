#pragma once

#include <array>
#include <concepts>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>

#include <Eigen/Core>

#include "slb/error.hpp"

namespace slb {

enum class Interpolation { Linear, Cubic };

std::string_view to_string(Interpolation i);
Interpolation interpolation_from(std::string_view s);

/// Names a scenario may use for its curves; anything else is rejected.
inline constexpr std::array<std::string_view, 10> kCurveNames = {
    "R_bb_of_DC", "P_dss_of_DC", "P_dss_of_Rbb", "P_dss_of_Rf", "R_s_of_S",
    "R_f_of_P",   "R_dlev_of_DC", "r_a_of_DC",  "R_ba_of_DC",  "R_f_of_DC",
};

bool is_known_curve(std::string_view name);

/// A univariate function known at grid points. Cubic curves use the
/// not-a-knot spline, which reproduces any cubic polynomial exactly; with
/// three points it is the interpolating parabola, with two the chord.
class SampledCurve {
public:
    SampledCurve(Eigen::VectorXd xs, Eigen::VectorXd ys, Interpolation interpolation);

    const Eigen::VectorXd& xs() const { return xs_; }
    const Eigen::VectorXd& ys() const { return ys_; }
    Interpolation interpolation() const { return interpolation_; }

    double lo() const { return xs_(0); }
    double hi() const { return xs_(xs_.size() - 1); }
    double span() const { return hi() - lo(); }
    double default_step() const { return span() / 1000.0; }

    /// Value of the interpolant; throws DomainError outside [lo, hi].
    double operator()(double x) const;

    bool operator==(const SampledCurve& o) const {
        return xs_ == o.xs_ && ys_ == o.ys_ && interpolation_ == o.interpolation_;
    }

private:
    Eigen::VectorXd xs_;
    Eigen::VectorXd ys_;
    Interpolation interpolation_;
    // power-basis coefficients per segment: y_i + b t + c t^2 + d t^3
    Eigen::Matrix<double, Eigen::Dynamic, 3> coeffs_;
};

class CurveSet {
public:
    CurveSet() = default;

    /// Throws InvalidInput for a name outside kCurveNames.
    void set(const std::string& name, SampledCurve curve);

    bool contains(std::string_view name) const;

    /// Throws ConfigurationError naming the missing curve.
    const SampledCurve& require(std::string_view name) const;

    const std::map<std::string, SampledCurve, std::less<>>& curves() const { return curves_; }
    bool empty() const { return curves_.empty(); }

    bool operator==(const CurveSet&) const = default;

private:
    std::map<std::string, SampledCurve, std::less<>> curves_;
};

// Finite-difference stencils. The generic forms accept any callable; the
// curve overloads add the domain and capability checks.

template <typename F>
concept PlainFunction = !std::same_as<std::remove_cvref_t<F>, SampledCurve>;

template <PlainFunction F>
double d1(F&& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2 * h);
}

template <PlainFunction F>
double d3(F&& f, double x, double h) {
    return (f(x + 2 * h) - 2 * f(x + h) + 2 * f(x - h) - f(x - 2 * h)) / (2 * h * h * h);
}

/// Central first difference; h defaults to span / 1000.
double d1(const SampledCurve& curve, double x, std::optional<double> h = std::nullopt);

/// Third difference on the cubic interpolant; needs five or more samples.
double d3(const SampledCurve& curve, double x, std::optional<double> h = std::nullopt);

}  // namespace slb
