#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>

#include "pmvf/errors.hpp"

namespace pmvf {

/// Largest dimension supported by the point types. Deterministic rules stop at 3,
/// the Monte Carlo oracle goes up to this bound.
inline constexpr int kMaxDim = 8;

using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDim, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;

using ScalarField = std::function<double(const Vec&)>;

/// Exponent p of the p-Laplacian, 1 < p < inf.
class PExponent {
public:
    explicit PExponent(double p);

    double value() const noexcept { return p_; }
    double minus_one() const noexcept { return p_ - 1.0; }
    /// p/(p-1), the homogeneity of the radial profile |x|^{p/(p-1)}.
    double conjugate() const noexcept { return p_ / (p_ - 1.0); }

    bool is_two() const noexcept { return p_ == 2.0; }
    bool is_three() const noexcept { return p_ == 3.0; }
    bool is_three_halves() const noexcept { return p_ == 1.5; }

private:
    double p_;
};

/// J_p(t) = |t|^{p-2} t.
inline double jp(const PExponent& p, double t) {
    if (t == 0.0) return 0.0;
    if (p.is_two()) return t;
    if (p.is_three()) return t * std::fabs(t);
    if (p.is_three_halves()) return std::copysign(std::sqrt(std::fabs(t)), t);
    return std::copysign(std::pow(std::fabs(t), p.minus_one()), t);
}

/// J_p'(t) = (p-1)|t|^{p-2}; +inf at t = 0 when p < 2.
inline double jp_derivative(const PExponent& p, double t) {
    if (p.is_two()) return 1.0;
    if (p.is_three()) return 2.0 * std::fabs(t);
    if (p.is_three_halves()) return 0.5 / std::sqrt(std::fabs(t));
    return p.minus_one() * std::pow(std::fabs(t), p.value() - 2.0);
}

/// Inverse of J_p: sign(s)|s|^{1/(p-1)}.
inline double jp_inverse(const PExponent& p, double s) {
    if (s == 0.0) return 0.0;
    if (p.is_two()) return s;
    if (p.is_three()) return std::copysign(std::sqrt(std::fabs(s)), s);
    return std::copysign(std::pow(std::fabs(s), 1.0 / p.minus_one()), s);
}

/// A C^2 field with analytic derivatives, valid on B_R(center).
///
/// `increment(x, y)` returns phi(x + y) - phi(x). When left empty it is computed by
/// subtracting values; test functions provide a cancellation-free form so that the
/// mean value operators stay accurate at small radii.
struct SmoothTestFunction {
    int dim = 2;
    std::function<double(const Vec&)> value;
    std::function<Vec(const Vec&)> gradient;
    std::function<Mat(const Vec&)> hessian;
    std::function<double(const Vec&, const Vec&)> increment;
    Vec center;
    double validity_radius = std::numeric_limits<double>::infinity();
    std::optional<Vec> singularity;  // point where phi fails to be C^2, if any

    /// Radius of the largest ball around x on which phi is C^2.
    double smooth_radius(const Vec& x) const {
        double R = validity_radius - (x - center).norm();
        if (singularity) R = std::min(R, (x - *singularity).norm());
        return R;
    }

    double difference(const Vec& x, const Vec& y) const {
        if (increment) return increment(x, y);
        return value(x + y) - value(x);
    }
};

/// |grad phi| below this makes Delta_p singular for p < 2.
inline constexpr double kGradientFloor = 1e-10;

/// Delta_p phi(x) = |grad|^{p-2} Delta phi + (p-2)|grad|^{p-4} Delta_inf phi.
double p_laplacian(const PExponent& p, const SmoothTestFunction& phi, const Vec& x);

/// Neumaier summation; order-dependent but exact-rounding friendly.
class CompensatedSum {
public:
    void add(double v) noexcept {
        const double t = sum_ + v;
        if (std::fabs(sum_) >= std::fabs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace pmvf
