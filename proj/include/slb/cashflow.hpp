#pragma once

// Time-value-of-money kernels: level annuities, amortization schedules,
// straight-line depreciation and present values of monthly payment streams.
//
// Everything here is templated on the scalar type and stateless. Period
// indices are 1-based months; a discount rate d maps period k to the factor
// (1 + d)^-k.

#include <cmath>
#include <vector>

#include <Eigen/Core>

#include "slb/error.hpp"

namespace slb {

using Eigen::Index;

enum class Period { Monthly, Annual };

template <typename Scalar>
struct RatePerPeriod {
    Scalar value{0};
    Period period{Period::Monthly};

    static RatePerPeriod monthly(Scalar v) { return {v, Period::Monthly}; }
    static RatePerPeriod annual(Scalar v) { return {v, Period::Annual}; }

    /// Nominal conversion: an annual rate maps to value / 12 per month.
    RatePerPeriod to_monthly() const {
        if (period == Period::Monthly) return *this;
        return {value / Scalar(12), Period::Monthly};
    }
};

using Rate = RatePerPeriod<double>;

template <typename Scalar>
struct AmortizationRow {
    Index period_index;
    Scalar payment;
    Scalar interest;
    Scalar principal;
    Scalar balance_after;
};

template <typename Scalar>
using AmortizationSchedule = std::vector<AmortizationRow<Scalar>>;

/// Amounts paid at strictly increasing 1-based month indices.
template <typename Scalar>
class PaymentStream {
public:
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    using IndexVector = Eigen::Matrix<Index, Eigen::Dynamic, 1>;

    PaymentStream() = default;

    PaymentStream(IndexVector periods, Vector amounts)
        : periods_(std::move(periods)), amounts_(std::move(amounts)) {
        if (periods_.size() != amounts_.size())
            throw InvalidInput("payment stream: periods and amounts differ in length");
        for (Index k = 0; k < periods_.size(); ++k) {
            if (periods_(k) < 1)
                throw InvalidInput("payment stream: period indices start at 1");
            if (k > 0 && periods_(k) <= periods_(k - 1))
                throw InvalidInput("payment stream: period indices must be strictly increasing");
        }
    }

    /// Amounts at periods 1..n.
    static PaymentStream consecutive(Vector amounts) {
        IndexVector periods = IndexVector::LinSpaced(amounts.size(), 1, amounts.size());
        return PaymentStream(std::move(periods), std::move(amounts));
    }

    Index size() const { return amounts_.size(); }
    bool empty() const { return amounts_.size() == 0; }
    const IndexVector& periods() const { return periods_; }
    const Vector& amounts() const { return amounts_; }

    /// First `n` periods only.
    PaymentStream truncated(Index last_period) const {
        Index keep = 0;
        while (keep < size() && periods_(keep) <= last_period) ++keep;
        return PaymentStream(periods_.head(keep), amounts_.head(keep));
    }

    bool operator==(const PaymentStream& o) const {
        return periods_ == o.periods_ && amounts_ == o.amounts_;
    }

private:
    IndexVector periods_;
    Vector amounts_;
};

namespace detail {

template <typename Scalar>
void check_discount(const RatePerPeriod<Scalar>& rate) {
    if (!std::isfinite(rate.value) || !(rate.value > Scalar(-1)))
        throw InvalidInput("rate must be finite and greater than -1");
}

template <typename Scalar>
void check_loan(Scalar principal, const RatePerPeriod<Scalar>& rate, Index n_periods) {
    if (!(principal > Scalar(0)) || !std::isfinite(principal))
        throw InvalidInput("principal must be positive");
    if (n_periods < 1) throw InvalidInput("number of periods must be at least 1");
    if (!(rate.value >= Scalar(0)) || !std::isfinite(rate.value))
        throw InvalidInput("loan rate must be nonnegative");
}

// 1 - (1 + r)^-m, accurate for small r
template <typename Scalar>
Scalar one_minus_discount(Scalar r, Index m) {
    using std::expm1;
    using std::log1p;
    return -expm1(-Scalar(m) * log1p(r));
}

}  // namespace detail

/// Level monthly payment that retires `principal` in exactly `n_periods`.
template <typename Scalar>
Scalar annuity_payment(Scalar principal, RatePerPeriod<Scalar> rate, Index n_periods) {
    rate = rate.to_monthly();
    detail::check_loan(principal, rate, n_periods);
    if (rate.value == Scalar(0)) return principal / Scalar(n_periods);
    return principal * rate.value / detail::one_minus_discount(rate.value, n_periods);
}

/// Closed-form schedule. The balance after month k is the present value of
/// the payments still owed, P(1 - v^(n-k)) / (1 - v^n) with v = 1/(1+r), so
/// the final balance is zero by construction rather than by accumulation.
template <typename Scalar>
AmortizationSchedule<Scalar> amortization_schedule(Scalar principal, RatePerPeriod<Scalar> rate,
                                                   Index n_periods) {
    rate = rate.to_monthly();
    const Scalar payment = annuity_payment(principal, rate, n_periods);
    const Scalar r = rate.value;
    const Scalar denom = r == Scalar(0) ? Scalar(n_periods)
                                        : detail::one_minus_discount(r, n_periods);

    auto balance_after = [&](Index k) {
        const Index remaining = n_periods - k;
        if (remaining == 0) return Scalar(0);
        if (r == Scalar(0)) return principal * Scalar(remaining) / denom;
        return principal * (detail::one_minus_discount(r, remaining) / denom);
    };

    AmortizationSchedule<Scalar> rows;
    rows.reserve(static_cast<std::size_t>(n_periods));
    Scalar before = principal;
    for (Index k = 1; k <= n_periods; ++k) {
        const Scalar after = balance_after(k);
        rows.push_back({k, payment, before * r, before - after, after});
        before = after;
    }
    return rows;
}

template <typename Scalar>
PaymentStream<Scalar> interest_stream(const AmortizationSchedule<Scalar>& schedule) {
    typename PaymentStream<Scalar>::IndexVector periods(static_cast<Index>(schedule.size()));
    typename PaymentStream<Scalar>::Vector amounts(static_cast<Index>(schedule.size()));
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        periods(static_cast<Index>(i)) = schedule[i].period_index;
        amounts(static_cast<Index>(i)) = schedule[i].interest;
    }
    return PaymentStream<Scalar>(std::move(periods), std::move(amounts));
}

/// (1 + d)^-k for each period index.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> discount_factors(
    const Eigen::Matrix<Index, Eigen::Dynamic, 1>& periods, RatePerPeriod<Scalar> discount) {
    discount = discount.to_monthly();
    detail::check_discount(discount);
    const Scalar log_growth = std::log1p(discount.value);
    return periods.template cast<Scalar>().unaryExpr(
        [log_growth](Scalar k) { return std::exp(-k * log_growth); });
}

/// Sum over k = 1..n of payment / (1 + d)^k, in closed form.
template <typename Scalar>
Scalar pv_level_stream(Scalar payment, RatePerPeriod<Scalar> discount, Index n_periods) {
    discount = discount.to_monthly();
    detail::check_discount(discount);
    if (n_periods < 1) throw InvalidInput("number of periods must be at least 1");
    if (discount.value == Scalar(0)) return payment * Scalar(n_periods);
    return payment * detail::one_minus_discount(discount.value, n_periods) / discount.value;
}

template <typename Scalar>
Scalar pv_stream(const PaymentStream<Scalar>& stream, RatePerPeriod<Scalar> discount) {
    discount = discount.to_monthly();
    detail::check_discount(discount);
    if (stream.empty()) return Scalar(0);
    if (discount.value == Scalar(0)) return stream.amounts().sum();
    return stream.amounts().dot(discount_factors(stream.periods(), discount));
}

template <typename Scalar>
PaymentStream<Scalar> straight_line_depreciation(Scalar basis, Index n_periods) {
    if (n_periods < 1) throw InvalidInput("depreciation life must be at least 1 period");
    if (!(basis >= Scalar(0)) || !std::isfinite(basis))
        throw InvalidInput("depreciation basis must be nonnegative");
    using Vector = typename PaymentStream<Scalar>::Vector;
    return PaymentStream<Scalar>::consecutive(
        Vector::Constant(n_periods, basis / Scalar(n_periods)));
}

}  // namespace slb
