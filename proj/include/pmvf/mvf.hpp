#pragma once

#include <functional>
#include <vector>

#include "pmvf/core.hpp"
#include "pmvf/quadrature.hpp"

namespace pmvf {

/// phi(x + y) - phi(x) as a function of the offset y.
using Increment = std::function<double(const Vec&)>;

struct MvfOptions {
    int scan_points = 1024;     // d = 2: sign-change scan of the increment on each circle
    GradingOptions grading{16, 0.15, 1e-20};  // d = 2: graded panels around those sign changes
    int radial_nodes = 48;      // d = 2 ball: Gauss-Legendre points in the radius
    AdaptiveOptions adaptive{1e-12, 16, 1 << 20};  // d = 3: uniform rules, doubled
};

/// I_r^p[phi](x) = (1/(C_{d,p} r^p)) avg_{dB_r} J_p(phi(x+y) - phi(x)).
double mvf_sphere(const PExponent& p, int dim, const Increment& increment, double r,
                  const MvfOptions& options = {});
double mvf_sphere(const PExponent& p, const SmoothTestFunction& phi, const Vec& x, double r,
                  const MvfOptions& options = {});
double mvf_sphere(const PExponent& p, const ScalarField& phi, const Vec& x, double r,
                  const MvfOptions& options = {});

/// M_r^p[phi](x) = (1/(D_{d,p} r^p)) avg_{B_r} J_p(phi(x+y) - phi(x)).
double mvf_ball(const PExponent& p, int dim, const Increment& increment, double r,
                const MvfOptions& options = {});
double mvf_ball(const PExponent& p, const SmoothTestFunction& phi, const Vec& x, double r,
                const MvfOptions& options = {});
double mvf_ball(const PExponent& p, const ScalarField& phi, const Vec& x, double r,
                const MvfOptions& options = {});

/// Unnormalized sphere average avg_{dB_r} J_p(phi(x+y) - phi(x)).
double sphere_jp_average(const PExponent& p, int dim, const Increment& increment, double r,
                         const MvfOptions& options = {});
double ball_jp_average(const PExponent& p, int dim, const Increment& increment, double r,
                       const MvfOptions& options = {});

struct MvfSample {
    double r = 0.0;
    double value_sphere = 0.0;
    double value_ball = 0.0;
    double reference = 0.0;
    double error_sphere = 0.0;
    double error_ball = 0.0;
};

/// Evaluates both operators at each radius and compares with Delta_p phi(x).
/// Radii must be strictly decreasing and inside phi's validity radius.
std::vector<MvfSample> consistency_sweep(const PExponent& p, const SmoothTestFunction& phi,
                                         const Vec& x, const std::vector<double>& radii,
                                         const MvfOptions& options = {});

/// Default radii 0.1 * 2^{-k}, k = 0..4.
std::vector<double> default_radii();

struct ProbePoint {
    double r = 0.0;
    Vec x;
};

/// (1/r^p) avg_{dB_r} J_p(|x+y|^beta - |x|^beta) along a sequence of (r, x).
/// Requires 1 < p < 2 and beta > p/(p-1).
std::vector<double> critical_point_probe(const PExponent& p, double beta,
                                         const std::vector<ProbePoint>& sequence,
                                         const MvfOptions& options = {});

}  // namespace pmvf
