#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "pmvf/core.hpp"

namespace pmvf {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussLegendre gauss_legendre(int n);

/// Nodes on the unit sphere S^{d-1} with positive weights summing to one.
///
/// Nodes come in antipodal pairs stored consecutively: node(2k+1) == -node(2k)
/// bit for bit and the two share a weight. Averages are accumulated pair by pair,
/// so an integrand that is odd to the last bit averages to exactly zero.
struct SphereRule {
    int dim = 0;
    std::vector<double> coords;  // size() * dim, row major
    std::vector<double> weights;

    std::size_t size() const noexcept { return weights.size(); }
    Vec node(std::size_t i) const;
};

/// Nodes in the closed unit ball, same pairing convention as SphereRule.
struct BallRule {
    int dim = 0;
    std::vector<double> coords;
    std::vector<double> weights;

    std::size_t size() const noexcept { return weights.size(); }
    Vec node(std::size_t i) const;
};

/// Direction on the unit circle where an integrand is not smooth.
/// Carrying (cos, sin) lets callers pass axis directions exactly.
struct CircleBreakpoint {
    double cos_angle = 1.0;
    double sin_angle = 0.0;

    static CircleBreakpoint from_angle(double angle);
    double angle() const;  // in [0, 2*pi)
};

struct GradingOptions {
    int order = 10;                    // Gauss-Legendre points per sub-panel
    double ratio = 0.15;               // geometric grading factor towards a breakpoint
    double min_relative_width = 1e-20; // innermost sub-panel width / half-panel width
};

/// Uniform rule: d = 1 is {+1, -1}; d = 2 uses n equally spaced angles (n even,
/// offset by half a step); d = 3 uses n Gauss-Legendre points in y_1 times 2n azimuths.
SphereRule uniform_sphere_rule(int dim, int n);

/// Composite Gauss-Legendre rule on the circle, geometrically graded towards the
/// given breakpoints (taken modulo pi, so they also mark the antipodal direction).
/// Without breakpoints this falls back to graded panels at 0 and pi/2.
SphereRule graded_circle_rule(std::span<const CircleBreakpoint> breakpoints,
                              const GradingOptions& options = {});

/// Rule resolving integrands whose only non-smooth set is {y_1 = 0}, such as
/// |y_1|^{p-2}. d = 1 is the two-point rule.
SphereRule axis_graded_sphere_rule(int dim, const GradingOptions& options = {});

/// Radial Gauss-Legendre with weight rho^{d-1}, tensored with a sphere rule.
BallRule make_ball_rule(int n_radial, const SphereRule& sphere);

using UnitIntegrand = std::function<double(const Vec&)>;

/// sum_i w_i f(center + r * node_i); throws NonFiniteIntegrand on NaN/inf samples.
double sphere_average(const SphereRule& rule, const ScalarField& f, const Vec& center, double r);
double ball_average(const BallRule& rule, const ScalarField& f, const Vec& center, double r);

/// Average of g(y) over unit-sphere nodes y (no centering/scaling).
double unit_sphere_average(const SphereRule& rule, const UnitIntegrand& g);
double unit_ball_average(const BallRule& rule, const UnitIntegrand& g);

struct AdaptiveOptions {
    double tol = 1e-8;
    int start = 16;
    int max_nodes = 1 << 20;
};

struct AdaptiveResult {
    double value = 0.0;
    std::size_t nodes = 0;
    bool converged = false;
    std::vector<double> history;
};

/// Uniform rules with node count doubled until two successive results differ
/// by less than tol (or the node cap is reached).
AdaptiveResult adaptive_unit_sphere_average(int dim, const UnitIntegrand& g,
                                            const AdaptiveOptions& options = {});
AdaptiveResult adaptive_unit_ball_average(int dim, const UnitIntegrand& g,
                                          const AdaptiveOptions& options = {});

/// Circle average of g resolving the non-smooth points of g, which are assumed to
/// sit where `locator` changes sign. Sign changes are found on a uniform scan and
/// refined to machine precision before building a graded rule.
double kink_aware_circle_average(const UnitIntegrand& g, const UnitIntegrand& locator,
                                 int scan_points = 1024, const GradingOptions& options = {});

/// Roots of a scalar function on [a, b] from sign changes on a uniform scan.
std::vector<double> bracketed_roots(const std::function<double(double)>& fn, double a, double b,
                                    int scan_points);

/// Integral over [a, b] with panels split at the given interior breakpoints and
/// graded towards every panel end.
double graded_integral(const std::function<double(double)>& fn, double a, double b,
                       std::span<const double> breakpoints, const GradingOptions& options = {});

enum class Region { Sphere, Ball };

struct MonteCarloEstimate {
    double mean = 0.0;
    double standard_error = 0.0;
};

/// Plain Monte Carlo average over the sphere or ball of radius r around center.
/// Sphere points are normalized Gaussian vectors; ball points scale those by U^{1/d}.
MonteCarloEstimate mc_average(int dim, Region region, const ScalarField& f, const Vec& center,
                              double r, std::size_t sample_count, std::uint64_t seed);

}  // namespace pmvf
