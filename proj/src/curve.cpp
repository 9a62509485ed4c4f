#include "slb/curve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

namespace slb {

namespace {

// Second derivatives of the interpolating spline at the knots.
Eigen::VectorXd spline_moments(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    const Eigen::Index n = x.size();
    Eigen::VectorXd moments = Eigen::VectorXd::Zero(n);
    if (n == 2) return moments;

    const Eigen::VectorXd h = x.tail(n - 1) - x.head(n - 1);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 1; i + 1 < n; ++i) {
        a(i, i - 1) = h(i - 1);
        a(i, i) = 2 * (h(i - 1) + h(i));
        a(i, i + 1) = h(i);
        rhs(i) = 6 * ((y(i + 1) - y(i)) / h(i) - (y(i) - y(i - 1)) / h(i - 1));
    }
    if (n == 3) {
        // single parabola: constant second derivative
        a(0, 0) = 1;
        a(0, 1) = -1;
        a(2, 1) = 1;
        a(2, 2) = -1;
    } else {
        // not-a-knot: third derivative continuous across x_1 and x_{n-2}
        a(0, 0) = h(1);
        a(0, 1) = -(h(0) + h(1));
        a(0, 2) = h(0);
        a(n - 1, n - 3) = h(n - 2);
        a(n - 1, n - 2) = -(h(n - 3) + h(n - 2));
        a(n - 1, n - 1) = h(n - 3);
    }
    moments = a.fullPivLu().solve(rhs);
    return moments;
}

}  // namespace

std::string_view to_string(Interpolation i) {
    return i == Interpolation::Linear ? "linear" : "cubic";
}

Interpolation interpolation_from(std::string_view s) {
    if (s == "linear") return Interpolation::Linear;
    if (s == "cubic") return Interpolation::Cubic;
    throw InvalidInput("interpolation must be \"linear\" or \"cubic\"");
}

bool is_known_curve(std::string_view name) {
    return std::find(kCurveNames.begin(), kCurveNames.end(), name) != kCurveNames.end();
}

SampledCurve::SampledCurve(Eigen::VectorXd xs, Eigen::VectorXd ys, Interpolation interpolation)
    : xs_(std::move(xs)), ys_(std::move(ys)), interpolation_(interpolation) {
    if (xs_.size() != ys_.size()) throw InvalidInput("curve xs and ys differ in length");
    if (xs_.size() < 2) throw InvalidInput("curve needs at least two samples");
    if (!xs_.allFinite() || !ys_.allFinite()) throw InvalidInput("curve samples must be finite");
    for (Eigen::Index i = 1; i < xs_.size(); ++i)
        if (!(xs_(i) > xs_(i - 1))) throw InvalidInput("curve xs must be strictly increasing");

    const Eigen::Index segments = xs_.size() - 1;
    coeffs_.resize(segments, 3);
    const Eigen::VectorXd h = xs_.tail(segments) - xs_.head(segments);
    const Eigen::VectorXd slope = (ys_.tail(segments) - ys_.head(segments)).cwiseQuotient(h);
    if (interpolation_ == Interpolation::Linear) {
        coeffs_.setZero();
        coeffs_.col(0) = slope;
        return;
    }
    const Eigen::VectorXd m = spline_moments(xs_, ys_);
    for (Eigen::Index i = 0; i < segments; ++i) {
        coeffs_(i, 0) = slope(i) - h(i) * (2 * m(i) + m(i + 1)) / 6;
        coeffs_(i, 1) = m(i) / 2;
        coeffs_(i, 2) = (m(i + 1) - m(i)) / (6 * h(i));
    }
}

double SampledCurve::operator()(double x) const {
    if (!(x >= lo() && x <= hi()))
        throw DomainError("x = " + std::to_string(x) + " outside curve domain [" +
                          std::to_string(lo()) + ", " + std::to_string(hi()) + "]");
    const double* begin = xs_.data();
    const double* end = begin + xs_.size();
    Eigen::Index i = std::upper_bound(begin, end, x) - begin - 1;
    i = std::clamp<Eigen::Index>(i, 0, xs_.size() - 2);
    const double t = x - xs_(i);
    return ys_(i) + t * (coeffs_(i, 0) + t * (coeffs_(i, 1) + t * coeffs_(i, 2)));
}

void CurveSet::set(const std::string& name, SampledCurve curve) {
    if (!is_known_curve(name)) throw InvalidInput("unknown curve name \"" + name + "\"");
    curves_.insert_or_assign(name, std::move(curve));
}

bool CurveSet::contains(std::string_view name) const { return curves_.find(name) != curves_.end(); }

const SampledCurve& CurveSet::require(std::string_view name) const {
    auto it = curves_.find(name);
    if (it == curves_.end())
        throw ConfigurationError(std::string(name),
                                 "missing curve \"" + std::string(name) + "\"");
    return it->second;
}

namespace {

double checked_step(const SampledCurve& curve, double x, std::optional<double> h, int reach) {
    const double step = h.value_or(curve.default_step());
    if (!(step > 0) || !std::isfinite(step)) throw InvalidInput("finite-difference step must be > 0");
    if (!(x - reach * step >= curve.lo() && x + reach * step <= curve.hi()))
        throw DomainError("stencil around x = " + std::to_string(x) +
                          " leaves curve domain [" + std::to_string(curve.lo()) + ", " +
                          std::to_string(curve.hi()) + "]");
    return step;
}

}  // namespace

double d1(const SampledCurve& curve, double x, std::optional<double> h) {
    const double step = checked_step(curve, x, h, 1);
    return d1([&curve](double t) { return curve(t); }, x, step);
}

double d3(const SampledCurve& curve, double x, std::optional<double> h) {
    if (curve.interpolation() != Interpolation::Cubic)
        throw CapabilityError("third derivative requires cubic curve");
    if (curve.xs().size() < 5)
        throw CapabilityError("third derivative requires at least five samples");
    const double step = checked_step(curve, x, h, 2);
    return d3([&curve](double t) { return curve(t); }, x, step);
}

}  // namespace slb
