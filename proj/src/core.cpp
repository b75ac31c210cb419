#include "pmvf/core.hpp"

#include <string>

namespace pmvf {

PExponent::PExponent(double p) : p_(p) {
    if (!(p > 1.0) || !std::isfinite(p))
        throw InvalidArgument("exponent p must satisfy 1 < p < inf, got " + std::to_string(p));
}

double p_laplacian(const PExponent& p, const SmoothTestFunction& phi, const Vec& x) {
    const Vec g = phi.gradient(x);
    const Mat H = phi.hessian(x);
    const double laplacian = H.trace();
    if (p.is_two()) return laplacian;

    const double norm = g.norm();
    if (p.value() < 2.0 && norm < kGradientFloor)
        throw SingularGradient("p < 2 and |grad phi| = " + std::to_string(norm) + " below floor");
    if (norm == 0.0) return 0.0;  // p > 2: both terms vanish at a critical point

    const double infinity_laplacian = g.dot(H * g);
    return std::pow(norm, p.value() - 2.0) * laplacian +
           (p.value() - 2.0) * std::pow(norm, p.value() - 4.0) * infinity_laplacian;
}

}  // namespace pmvf
