#include "pmvf/mvf.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pmvf/constants.hpp"
#include "pmvf/test_functions.hpp"

namespace pmvf {

namespace {

void check_radius(double r) {
    if (!(r > 0.0) || !std::isfinite(r)) throw InvalidArgument("radius must be positive and finite");
}

double circle_jp_average(const PExponent& p, const Increment& increment, double r,
                         const MvfOptions& options) {
    Vec ry(2);
    auto scaled = [&](const Vec& y) {
        ry = r * y;
        return increment(ry);
    };
    return kink_aware_circle_average([&](const Vec& y) { return jp(p, scaled(y)); }, scaled,
                                     options.scan_points, options.grading);
}

}  // namespace

double sphere_jp_average(const PExponent& p, int dim, const Increment& increment, double r,
                         const MvfOptions& options) {
    check_radius(r);
    if (dim == 1) {
        Vec y(1);
        y[0] = r;
        const double a = jp(p, increment(y));
        y[0] = -r;
        const double b = jp(p, increment(y));
        if (!std::isfinite(a) || !std::isfinite(b)) throw NonFiniteIntegrand("mvf: non-finite sample");
        return 0.5 * (a + b);
    }
    if (dim == 2) return circle_jp_average(p, increment, r, options);
    if (dim == 3) {
        return adaptive_unit_sphere_average(
                   3, [&](const Vec& y) { return jp(p, increment(Vec(r * y))); }, options.adaptive)
            .value;
    }
    throw InvalidArgument("mean value operators are implemented for d in {1,2,3}");
}

double ball_jp_average(const PExponent& p, int dim, const Increment& increment, double r,
                       const MvfOptions& options) {
    check_radius(r);
    if (dim == 1 || dim == 2) {
        const GaussLegendre& gl = gauss_legendre(options.radial_nodes);
        CompensatedSum sum;
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            const double rho = 0.5 * (gl.nodes[i] + 1.0);
            const double w = dim * std::pow(rho, dim - 1) * 0.5 * gl.weights[i];
            sum.add(w * sphere_jp_average(p, dim, increment, r * rho, options));
        }
        return sum.value();
    }
    if (dim == 3) {
        return adaptive_unit_ball_average(
                   3, [&](const Vec& y) { return jp(p, increment(Vec(r * y))); }, options.adaptive)
            .value;
    }
    throw InvalidArgument("mean value operators are implemented for d in {1,2,3}");
}

double mvf_sphere(const PExponent& p, int dim, const Increment& increment, double r,
                  const MvfOptions& options) {
    const NormalizationConstants k = cached_constants(dim, p);
    return sphere_jp_average(p, dim, increment, r, options) / (k.C * std::pow(r, p.value()));
}

double mvf_ball(const PExponent& p, int dim, const Increment& increment, double r,
                const MvfOptions& options) {
    const NormalizationConstants k = cached_constants(dim, p);
    return ball_jp_average(p, dim, increment, r, options) / (k.D * std::pow(r, p.value()));
}

double mvf_sphere(const PExponent& p, const SmoothTestFunction& phi, const Vec& x, double r,
                  const MvfOptions& options) {
    return mvf_sphere(p, phi.dim, [&](const Vec& y) { return phi.difference(x, y); }, r, options);
}

double mvf_ball(const PExponent& p, const SmoothTestFunction& phi, const Vec& x, double r,
                const MvfOptions& options) {
    return mvf_ball(p, phi.dim, [&](const Vec& y) { return phi.difference(x, y); }, r, options);
}

double mvf_sphere(const PExponent& p, const ScalarField& phi, const Vec& x, double r,
                  const MvfOptions& options) {
    const double base = phi(x);
    return mvf_sphere(p, static_cast<int>(x.size()), [&](const Vec& y) { return phi(x + y) - base; }, r,
                      options);
}

double mvf_ball(const PExponent& p, const ScalarField& phi, const Vec& x, double r,
                const MvfOptions& options) {
    const double base = phi(x);
    return mvf_ball(p, static_cast<int>(x.size()), [&](const Vec& y) { return phi(x + y) - base; }, r,
                    options);
}

std::vector<double> default_radii() {
    std::vector<double> radii;
    for (int k = 0; k <= 4; ++k) radii.push_back(0.1 * std::ldexp(1.0, -k));
    return radii;
}

std::vector<MvfSample> consistency_sweep(const PExponent& p, const SmoothTestFunction& phi,
                                         const Vec& x, const std::vector<double>& radii,
                                         const MvfOptions& options) {
    if (radii.empty()) throw InvalidArgument("consistency sweep needs at least one radius");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        check_radius(radii[i]);
        if (i > 0 && !(radii[i] < radii[i - 1]))
            throw InvalidArgument("radii must be strictly decreasing");
    }
    if (!(radii.front() < phi.smooth_radius(x)))
        throw InvalidArgument("largest radius exceeds the validity radius of the test function at x");

    const double reference = p_laplacian(p, phi, x);  // throws SingularGradient for p < 2
    std::vector<MvfSample> out;
    out.reserve(radii.size());
    for (double r : radii) {
        MvfSample s;
        s.r = r;
        s.value_sphere = mvf_sphere(p, phi, x, r, options);
        s.value_ball = mvf_ball(p, phi, x, r, options);
        s.reference = reference;
        s.error_sphere = std::fabs(s.value_sphere - reference);
        s.error_ball = std::fabs(s.value_ball - reference);
        out.push_back(s);
    }
    return out;
}

std::vector<double> critical_point_probe(const PExponent& p, double beta,
                                         const std::vector<ProbePoint>& sequence,
                                         const MvfOptions& options) {
    if (!(p.value() < 2.0)) throw InvalidArgument("critical point probe needs 1 < p < 2");
    if (!(beta > p.conjugate()))
        throw InvalidArgument("critical point probe needs beta > p/(p-1) = " + std::to_string(p.conjugate()));
    std::vector<double> values;
    values.reserve(sequence.size());
    for (const ProbePoint& pt : sequence) {
        const int dim = static_cast<int>(pt.x.size());
        const SmoothTestFunction phi = radial_power(Vec::Zero(dim), beta);
        const double avg = sphere_jp_average(
            p, dim, [&](const Vec& y) { return phi.difference(pt.x, y); }, pt.r, options);
        values.push_back(avg / std::pow(pt.r, p.value()));
    }
    return values;
}

}  // namespace pmvf
