#include "pmvf/constants.hpp"

#include "pmvf/quadrature.hpp"

#include <map>
#include <mutex>
#include <utility>

namespace pmvf {

namespace {

// Integrands below are singular or kinked only on {y_1 = 0}, which the
// axis-graded rule resolves; the inner cut-off is pushed far below double
// resolution of the angle because nodes are placed relative to the axis.
GradingOptions singular_grading() {
    GradingOptions opt;
    opt.order = 12;
    opt.min_relative_width = 1e-150;
    return opt;
}

}  // namespace

NormalizationConstants compute_constants(int dim, const PExponent& p) {
    if (dim < 1 || dim > 3) throw InvalidArgument("constants are computed for d in {1,2,3}");
    NormalizationConstants k;
    k.dim = dim;
    k.p = p.value();
    if (dim == 1) {
        k.C = 0.5;
    } else {
        const SphereRule rule = axis_graded_sphere_rule(dim, singular_grading());
        const double pv = p.value();
        k.C = 0.5 * unit_sphere_average(rule, [pv](const Vec& y) { return std::pow(std::fabs(y[0]), pv); });
    }
    k.D = dim * k.C / (p.value() + dim);
    return k;
}

NormalizationConstants cached_constants(int dim, const PExponent& p) {
    static std::mutex mutex;
    static std::map<std::pair<int, double>, NormalizationConstants> cache;
    const auto key = std::make_pair(dim, p.value());
    {
        std::lock_guard<std::mutex> lock(mutex);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    const NormalizationConstants k = compute_constants(dim, p);
    std::lock_guard<std::mutex> lock(mutex);
    cache.emplace(key, k);
    return k;
}

IbpCheck check_ibp_identity(int dim, const PExponent& p, int i) {
    if (dim < 2 || dim > 3) throw InvalidArgument("identity check needs d in {2,3}");
    if (i < 2 || i > dim) throw InvalidArgument("coordinate index must satisfy 2 <= i <= d");
    IbpCheck out;
    if (p.value() < kIbpMinExponent) {
        out.skipped = true;
        return out;
    }
    const SphereRule rule = axis_graded_sphere_rule(dim, singular_grading());
    const double pv = p.value();
    const int c = i - 1;
    out.lhs = 0.5 * unit_sphere_average(rule, [pv](const Vec& y) { return std::pow(std::fabs(y[0]), pv); });
    out.rhs = 0.5 * (pv - 1.0) *
              unit_sphere_average(rule, [pv, c](const Vec& y) {
                  return std::pow(std::fabs(y[0]), pv - 2.0) * y[c] * y[c];
              });
    out.residual = std::fabs(out.lhs - out.rhs);
    return out;
}

}  // namespace pmvf
