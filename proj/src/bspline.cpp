#include "hyperkan/bspline.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hyperkan/error.hpp"

namespace hyperkan {

BSplineBasis::BSplineBasis(unsigned degree, unsigned intervals, double lo, double hi)
    : degree_(degree), intervals_(intervals), lo_(lo), hi_(hi) {
    if (degree < 1 || degree > kMaxDegree) {
        throw InvalidConfig("spline degree must be in [1, " + std::to_string(kMaxDegree) + "]");
    }
    if (intervals < 1) throw InvalidConfig("spline grid needs at least one interval");
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw InvalidConfig("spline grid range requires finite lo < hi");
    }
    const std::size_t count = intervals + 2 * degree + 1;
    knots_.resize(count);
    const double width = (hi - lo) / intervals;
    for (std::size_t i = 0; i < count; ++i) {
        const double offset = static_cast<double>(i) - static_cast<double>(degree);
        knots_[i] = lo + offset * width;
    }
    // Pin the domain ends so clamped inputs land exactly on them.
    knots_[degree] = lo;
    knots_[degree + intervals] = hi;
}

void BSplineBasis::span_values(std::size_t span, unsigned p, double t, double* out) const {
    std::array<double, kMaxDegree + 1> left{};
    std::array<double, kMaxDegree + 1> right{};
    out[0] = 1.0;
    for (unsigned j = 1; j <= p; ++j) {
        left[j] = t - knots_[span + 1 - j];
        right[j] = knots_[span + j] - t;
        double saved = 0.0;
        for (unsigned r = 0; r < j; ++r) {
            const double temp = out[r] / (right[r + 1] + left[j - r]);
            out[r] = saved + right[r + 1] * temp;
            saved = left[j - r] * temp;
        }
        out[j] = saved;
    }
}

BSplineBasis::Local BSplineBasis::evaluate_local(double t) const {
    Local local;
    if (t < lo_) {
        t = lo_;
        local.clamped = true;
    } else if (t > hi_) {
        t = hi_;
        local.clamped = true;
    }
    // Locate the span with knots[span] <= t < knots[span + 1]; the right end of
    // the domain belongs to the last interval.
    const std::size_t first_span = degree_;
    const std::size_t last_span = degree_ + intervals_ - 1;
    const auto upper = std::upper_bound(knots_.begin() + static_cast<std::ptrdiff_t>(first_span),
                                        knots_.begin() + static_cast<std::ptrdiff_t>(last_span + 1),
                                        t);
    std::size_t span = static_cast<std::size_t>(upper - knots_.begin()) - 1;
    span = std::clamp(span, first_span, last_span);

    span_values(span, degree_, t, local.values.data());
    local.first = span - degree_;

    if (!local.clamped) {
        std::array<double, kMaxDegree + 1> lower{};
        span_values(span, degree_ - 1, t, lower.data());
        // lower[r] is B_{span-p+1+r, p-1}; B'_{i,p} = p (B_{i,p-1}/(k_{i+p}-k_i)
        //                                               - B_{i+1,p-1}/(k_{i+p+1}-k_{i+1})).
        const double p = degree_;
        for (unsigned r = 0; r <= degree_; ++r) {
            const std::size_t i = local.first + r;
            const double a = r >= 1 ? lower[r - 1] / (knots_[i + degree_] - knots_[i]) : 0.0;
            const double b =
                r < degree_ ? lower[r] / (knots_[i + degree_ + 1] - knots_[i + 1]) : 0.0;
            local.derivatives[r] = p * (a - b);
        }
    }
    return local;
}

std::vector<double> BSplineBasis::evaluate(double t) const {
    std::vector<double> dense(size(), 0.0);
    const Local local = evaluate_local(t);
    for (unsigned r = 0; r <= degree_; ++r) dense[local.first + r] = local.values[r];
    return dense;
}

}  // namespace hyperkan
