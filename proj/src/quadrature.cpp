#include "pmvf/quadrature.hpp"

#include <boost/math/special_functions/legendre.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <random>
#include <string>

namespace pmvf {

namespace {

constexpr double kPi = std::numbers::pi;

void require_finite(double v, const char* where) {
    if (!std::isfinite(v)) throw NonFiniteIntegrand(std::string("non-finite integrand sample in ") + where);
}

template <class Rule>
void normalize_weights(Rule& rule) {
    CompensatedSum total;
    for (double w : rule.weights) total.add(w);
    const double s = total.value();
    for (double& w : rule.weights) w /= s;
}

void push_pair(std::vector<double>& coords, std::vector<double>& weights, const double* y, int dim,
               double w) {
    for (int k = 0; k < dim; ++k) coords.push_back(y[k]);
    for (int k = 0; k < dim; ++k) coords.push_back(-y[k]);
    weights.push_back(w);
    weights.push_back(w);
}

// Offsets in (0, half] for a half panel graded towards 0, with their weights.
void graded_half_panel(double half, const GradingOptions& opt, std::vector<double>& offsets,
                       std::vector<double>& weights) {
    const GaussLegendre& gl = gauss_legendre(opt.order);
    const int levels = std::max(
        1, static_cast<int>(std::ceil(std::log(opt.min_relative_width) / std::log(opt.ratio))));
    auto emit = [&](double lo, double hi) {
        const double mid = 0.5 * (lo + hi), rad = 0.5 * (hi - lo);
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            offsets.push_back(mid + rad * gl.nodes[i]);
            weights.push_back(rad * gl.weights[i]);
        }
    };
    double hi = half;
    for (int k = 0; k < levels; ++k) {
        const double lo = hi * opt.ratio;
        emit(lo, hi);
        hi = lo;
    }
    emit(0.0, hi);
}

}  // namespace

GaussLegendre gauss_legendre(int n) {
    if (n < 1) throw InvalidArgument("Gauss-Legendre order must be positive");
    static std::mutex mutex;
    static std::map<int, GaussLegendre> cache;
    std::lock_guard<std::mutex> lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) return it->second;

    const std::vector<double> zeros = boost::math::legendre_p_zeros<double>(n);
    GaussLegendre rule;
    auto weight = [n](double x) {
        const double dp = boost::math::legendre_p_prime<double>(n, x);
        return 2.0 / ((1.0 - x * x) * dp * dp);
    };
    for (auto it = zeros.rbegin(); it != zeros.rend(); ++it) {
        if (*it == 0.0) continue;
        rule.nodes.push_back(-*it);
        rule.weights.push_back(weight(*it));
    }
    for (double z : zeros) {
        rule.nodes.push_back(z);
        rule.weights.push_back(weight(z));
    }
    return cache.emplace(n, std::move(rule)).first->second;
}

Vec SphereRule::node(std::size_t i) const {
    return Eigen::Map<const Vec>(coords.data() + i * dim, dim);
}

Vec BallRule::node(std::size_t i) const {
    return Eigen::Map<const Vec>(coords.data() + i * dim, dim);
}

CircleBreakpoint CircleBreakpoint::from_angle(double angle) {
    return {std::cos(angle), std::sin(angle)};
}

double CircleBreakpoint::angle() const {
    double a = std::atan2(sin_angle, cos_angle);
    if (a < 0.0) a += 2.0 * kPi;
    return a;
}

SphereRule uniform_sphere_rule(int dim, int n) {
    SphereRule rule;
    rule.dim = dim;
    if (dim == 1) {
        const double y = 1.0;
        push_pair(rule.coords, rule.weights, &y, 1, 0.5);
        return rule;
    }
    if (dim == 2) {
        if (n < 2 || n % 2 != 0) throw InvalidArgument("circle rule needs an even node count >= 2");
        for (int k = 0; k < n / 2; ++k) {
            const double t = (k + 0.5) * 2.0 * kPi / n;
            const double y[2] = {std::cos(t), std::sin(t)};
            push_pair(rule.coords, rule.weights, y, 2, 1.0 / n);
        }
        normalize_weights(rule);
        return rule;
    }
    if (dim == 3) {
        if (n < 1) throw InvalidArgument("sphere rule needs n >= 1");
        const GaussLegendre& gl = gauss_legendre(n);
        const int m = 2 * n;
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            const double u = gl.nodes[i];
            if (u < 0.0) continue;
            const double s = std::sqrt(std::max(0.0, 1.0 - u * u));
            const int azimuths = (u == 0.0) ? m / 2 : m;
            for (int j = 0; j < azimuths; ++j) {
                const double phi = (j + 0.5) * 2.0 * kPi / m;
                const double y[3] = {u, s * std::cos(phi), s * std::sin(phi)};
                push_pair(rule.coords, rule.weights, y, 3, 0.5 * gl.weights[i] / m);
            }
        }
        normalize_weights(rule);
        return rule;
    }
    throw InvalidArgument("deterministic sphere rules exist for d in {1,2,3} only");
}

SphereRule graded_circle_rule(std::span<const CircleBreakpoint> breakpoints,
                              const GradingOptions& options) {
    struct Bp {
        double angle;
        double c, s;
    };
    std::vector<Bp> bps;
    auto add = [&](CircleBreakpoint b) {
        // Fold onto [0, pi) by taking the antipodal direction.
        double a = b.angle();
        if (a >= kPi) {
            a -= kPi;
            b.cos_angle = -b.cos_angle;
            b.sin_angle = -b.sin_angle;
        }
        if (a >= kPi) a = 0.0;
        bps.push_back({a, b.cos_angle, b.sin_angle});
    };
    if (breakpoints.empty()) {
        add({1.0, 0.0});
        add({0.0, 1.0});
    } else {
        for (const auto& b : breakpoints) add(b);
    }
    std::sort(bps.begin(), bps.end(), [](const Bp& a, const Bp& b) { return a.angle < b.angle; });
    std::vector<Bp> unique;
    for (const auto& b : bps)
        if (unique.empty() || b.angle - unique.back().angle > 1e-15) unique.push_back(b);
    if (unique.size() > 1 && unique.front().angle + kPi - unique.back().angle <= 1e-15) unique.pop_back();

    SphereRule rule;
    rule.dim = 2;
    std::vector<double> offsets, weights;
    const std::size_t m = unique.size();
    for (std::size_t i = 0; i < m; ++i) {
        const Bp& lo = unique[i];
        Bp hi = (i + 1 < m) ? unique[i + 1] : Bp{unique[0].angle + kPi, -unique[0].c, -unique[0].s};
        const double half = 0.5 * (hi.angle - lo.angle);
        offsets.clear();
        weights.clear();
        graded_half_panel(half, options, offsets, weights);
        for (std::size_t k = 0; k < offsets.size(); ++k) {
            const double cd = std::cos(offsets[k]), sd = std::sin(offsets[k]);
            const double w = weights[k] / (2.0 * kPi);
            const double left[2] = {lo.c * cd - lo.s * sd, lo.s * cd + lo.c * sd};
            push_pair(rule.coords, rule.weights, left, 2, w);
            const double right[2] = {hi.c * cd + hi.s * sd, hi.s * cd - hi.c * sd};
            push_pair(rule.coords, rule.weights, right, 2, w);
        }
    }
    normalize_weights(rule);
    return rule;
}

SphereRule axis_graded_sphere_rule(int dim, const GradingOptions& options) {
    if (dim == 1) return uniform_sphere_rule(1, 2);
    if (dim == 2) {
        const CircleBreakpoint bps[2] = {{1.0, 0.0}, {0.0, 1.0}};
        return graded_circle_rule(bps, options);
    }
    if (dim == 3) {
        // y_1 = u is uniformly distributed on [-1, 1]; grade u in (0, 1] at both ends.
        std::vector<double> offsets, weights;
        graded_half_panel(0.5, options, offsets, weights);
        const std::size_t half = offsets.size();
        for (std::size_t k = 0; k < half; ++k) {
            offsets.push_back(1.0 - offsets[k]);
            weights.push_back(weights[k]);
        }
        constexpr int m = 64;
        SphereRule rule;
        rule.dim = 3;
        for (std::size_t k = 0; k < offsets.size(); ++k) {
            const double u = offsets[k];
            const double s = std::sqrt(std::max(0.0, (1.0 - u) * (1.0 + u)));
            for (int j = 0; j < m; ++j) {
                const double phi = (j + 0.5) * 2.0 * kPi / m;
                const double y[3] = {u, s * std::cos(phi), s * std::sin(phi)};
                push_pair(rule.coords, rule.weights, y, 3, 0.5 * weights[k] / m);
            }
        }
        normalize_weights(rule);
        return rule;
    }
    throw InvalidArgument("deterministic sphere rules exist for d in {1,2,3} only");
}

BallRule make_ball_rule(int n_radial, const SphereRule& sphere) {
    const GaussLegendre& gl = gauss_legendre(n_radial);
    const int d = sphere.dim;
    BallRule rule;
    rule.dim = d;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        const double rho = 0.5 * (gl.nodes[i] + 1.0);
        const double wr = d * std::pow(rho, d - 1) * 0.5 * gl.weights[i];
        for (std::size_t k = 0; k < sphere.size(); k += 2) {
            double y[kMaxDim];
            for (int c = 0; c < d; ++c) y[c] = rho * sphere.coords[k * d + c];
            push_pair(rule.coords, rule.weights, y, d, wr * sphere.weights[k]);
        }
    }
    normalize_weights(rule);
    return rule;
}

namespace {

template <class Rule>
double pairwise_average(const Rule& rule, const ScalarField& f, const Vec& center, double r,
                        const char* where) {
    if (!(r > 0.0)) throw InvalidArgument("radius must be positive");
    if (center.size() != rule.dim) throw InvalidArgument("center dimension does not match rule");
    CompensatedSum sum;
    Vec y(rule.dim);
    for (std::size_t k = 0; k < rule.size(); k += 2) {
        for (int c = 0; c < rule.dim; ++c) y[c] = r * rule.coords[k * rule.dim + c];
        const double a = f(center + y);
        const double b = f(center - y);
        require_finite(a, where);
        require_finite(b, where);
        sum.add(rule.weights[k] * (a + b));
    }
    return sum.value();
}

template <class Rule>
double pairwise_unit_average(const Rule& rule, const UnitIntegrand& g, const char* where) {
    CompensatedSum sum;
    Vec y(rule.dim);
    for (std::size_t k = 0; k < rule.size(); k += 2) {
        for (int c = 0; c < rule.dim; ++c) y[c] = rule.coords[k * rule.dim + c];
        const double a = g(y);
        const double b = g(-y);
        require_finite(a, where);
        require_finite(b, where);
        sum.add(rule.weights[k] * (a + b));
    }
    return sum.value();
}

}  // namespace

double sphere_average(const SphereRule& rule, const ScalarField& f, const Vec& center, double r) {
    return pairwise_average(rule, f, center, r, "sphere_average");
}

double ball_average(const BallRule& rule, const ScalarField& f, const Vec& center, double r) {
    return pairwise_average(rule, f, center, r, "ball_average");
}

double unit_sphere_average(const SphereRule& rule, const UnitIntegrand& g) {
    return pairwise_unit_average(rule, g, "sphere_average");
}

double unit_ball_average(const BallRule& rule, const UnitIntegrand& g) {
    return pairwise_unit_average(rule, g, "ball_average");
}

namespace {

template <class Evaluate>
AdaptiveResult adaptive_doubling(int dim, const AdaptiveOptions& options, Evaluate&& evaluate) {
    AdaptiveResult result;
    if (dim == 1) {
        result.value = evaluate(2);
        result.nodes = 2;
        result.converged = true;
        result.history.push_back(result.value);
        return result;
    }
    // d = 2: n is the node count; d = 3: n is the polar order (2 n^2 nodes).
    int n = (dim == 2) ? std::max(2, options.start + options.start % 2)
                       : std::max(1, static_cast<int>(std::sqrt(options.start / 2.0)));
    auto count = [dim](int k) { return dim == 2 ? std::size_t(k) : std::size_t(2) * k * k; };
    double previous = evaluate(n);
    result.history.push_back(previous);
    result.value = previous;
    result.nodes = count(n);
    while (count(2 * n) <= static_cast<std::size_t>(options.max_nodes)) {
        n *= 2;
        const double current = evaluate(n);
        result.history.push_back(current);
        result.value = current;
        result.nodes = count(n);
        if (std::fabs(current - previous) < options.tol) {
            result.converged = true;
            break;
        }
        previous = current;
    }
    return result;
}

}  // namespace

AdaptiveResult adaptive_unit_sphere_average(int dim, const UnitIntegrand& g,
                                            const AdaptiveOptions& options) {
    return adaptive_doubling(dim, options, [&](int n) {
        return unit_sphere_average(uniform_sphere_rule(dim, n), g);
    });
}

AdaptiveResult adaptive_unit_ball_average(int dim, const UnitIntegrand& g,
                                          const AdaptiveOptions& options) {
    return adaptive_doubling(dim, options, [&](int n) {
        const int radial = std::max(4, (dim == 2 ? n / 4 : n));
        return unit_ball_average(make_ball_rule(std::min(radial, 256), uniform_sphere_rule(dim, n)), g);
    });
}

std::vector<double> bracketed_roots(const std::function<double(double)>& fn, double a, double b,
                                    int scan_points) {
    std::vector<double> roots;
    double x0 = a, f0 = fn(a);
    if (f0 == 0.0) roots.push_back(a);
    for (int i = 1; i <= scan_points; ++i) {
        const double x1 = a + (b - a) * i / scan_points;
        const double f1 = fn(x1);
        if (f1 == 0.0) {
            if (f0 != 0.0) roots.push_back(x1);
        } else if (f0 != 0.0 && std::signbit(f0) != std::signbit(f1)) {
            std::uintmax_t iters = 200;
            const auto bracket = boost::math::tools::toms748_solve(
                fn, x0, x1, f0, f1, boost::math::tools::eps_tolerance<double>(52), iters);
            roots.push_back(0.5 * (bracket.first + bracket.second));
        }
        x0 = x1;
        f0 = f1;
    }
    return roots;
}

double kink_aware_circle_average(const UnitIntegrand& g, const UnitIntegrand& locator,
                                 int scan_points, const GradingOptions& options) {
    Vec y(2);
    auto along = [&](double t) {
        y[0] = std::cos(t);
        y[1] = std::sin(t);
        return locator(y);
    };
    const std::vector<double> roots = bracketed_roots(along, 0.0, 2.0 * kPi, scan_points);
    std::vector<CircleBreakpoint> bps;
    bps.reserve(roots.size());
    for (double t : roots) bps.push_back(CircleBreakpoint::from_angle(t));
    return unit_sphere_average(graded_circle_rule(bps, options), g);
}

double graded_integral(const std::function<double(double)>& fn, double a, double b,
                       std::span<const double> breakpoints, const GradingOptions& options) {
    std::vector<double> cuts{a};
    for (double x : breakpoints)
        if (x > a && x < b) cuts.push_back(x);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    CompensatedSum sum;
    std::vector<double> offsets, weights;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double lo = cuts[i], hi = cuts[i + 1];
        if (hi - lo <= 0.0) continue;
        offsets.clear();
        weights.clear();
        graded_half_panel(0.5 * (hi - lo), options, offsets, weights);
        for (std::size_t k = 0; k < offsets.size(); ++k) {
            const double left = fn(lo + offsets[k]);
            const double right = fn(hi - offsets[k]);
            require_finite(left, "graded_integral");
            require_finite(right, "graded_integral");
            sum.add(weights[k] * (left + right));
        }
    }
    return sum.value();
}

MonteCarloEstimate mc_average(int dim, Region region, const ScalarField& f, const Vec& center,
                              double r, std::size_t sample_count, std::uint64_t seed) {
    if (sample_count < 1000) throw InvalidArgument("Monte Carlo needs at least 1000 samples");
    if (dim < 1 || dim > kMaxDim) throw InvalidArgument("Monte Carlo dimension out of range");
    if (!(r > 0.0)) throw InvalidArgument("radius must be positive");
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);

    double mean = 0.0, m2 = 0.0;
    Vec y(dim);
    for (std::size_t i = 0; i < sample_count; ++i) {
        double norm = 0.0;
        do {
            for (int c = 0; c < dim; ++c) y[c] = normal(gen);
            norm = y.norm();
        } while (norm == 0.0);
        y /= norm;
        if (region == Region::Ball) y *= std::pow(uniform(gen), 1.0 / dim);
        const double v = f(center + r * y);
        require_finite(v, "mc_average");
        const double delta = v - mean;
        mean += delta / static_cast<double>(i + 1);
        m2 += delta * (v - mean);
    }
    const double n = static_cast<double>(sample_count);
    return {mean, std::sqrt(m2 / (n - 1.0) / n)};
}

}  // namespace pmvf
