#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace hyperkan {

/// Uniform-grid B-spline basis of a given degree on [lo, hi].
///
/// The grid has G intervals inside the domain and `degree` extension knots on
/// each side, so there are G + degree basis functions. Inputs outside the
/// domain are clamped to it before evaluation.
class BSplineBasis {
public:
    static constexpr unsigned kMaxDegree = 7;

    /// Nonzero basis values at one point: B_{first + r}(t) for r = 0..degree.
    struct Local {
        std::size_t first = 0;
        std::array<double, kMaxDegree + 1> values{};
        std::array<double, kMaxDegree + 1> derivatives{};
        bool clamped = false;  ///< true when t was outside [lo, hi]; derivatives are then zero
    };

    BSplineBasis() : BSplineBasis(3, 5, -1.0, 1.0) {}
    /// Throws InvalidConfig for degree outside [1, kMaxDegree], intervals == 0 or lo >= hi.
    BSplineBasis(unsigned degree, unsigned intervals, double lo, double hi);

    unsigned degree() const noexcept { return degree_; }
    unsigned intervals() const noexcept { return intervals_; }
    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }
    std::size_t size() const noexcept { return intervals_ + degree_; }
    const std::vector<double>& knots() const noexcept { return knots_; }

    Local evaluate_local(double t) const;

    /// All size() basis values at t (dense).
    std::vector<double> evaluate(double t) const;

    friend bool operator==(const BSplineBasis& a, const BSplineBasis& b) {
        return a.degree_ == b.degree_ && a.intervals_ == b.intervals_ && a.lo_ == b.lo_ &&
               a.hi_ == b.hi_;
    }

private:
    // Values of the degree-`p` basis functions supported on knot span `span`,
    // written to out[0..p] (B_{span-p} .. B_span).
    void span_values(std::size_t span, unsigned p, double t, double* out) const;

    unsigned degree_;
    unsigned intervals_;
    double lo_;
    double hi_;
    std::vector<double> knots_;
};

/// Spline evaluation entry point: all basis values at t.
inline std::vector<double> spline_eval(const BSplineBasis& basis, double t) {
    return basis.evaluate(t);
}

}  // namespace hyperkan
