#include "pmvf/dpp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <thread>

#include "pmvf/constants.hpp"

namespace pmvf {

namespace {

void require_dim(int dim) {
    if (dim < 1 || dim > 3) throw InvalidArgument("DPP solver supports d in {1,2,3}");
}

double sup_abs(double a, double b) { return std::max(a, std::fabs(b)); }

// Runs body(begin, end) over [0, n) split into contiguous chunks.
template <class Body>
void parallel_chunks(std::size_t n, int threads, Body&& body) {
    const std::size_t t = static_cast<std::size_t>(std::max(1, threads));
    if (t == 1 || n < 2 * t) {
        body(std::size_t{0}, n, 0);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(t);
    const std::size_t chunk = (n + t - 1) / t;
    for (std::size_t k = 0; k < t; ++k) {
        const std::size_t b = k * chunk, e = std::min(n, b + chunk);
        if (b >= e) break;
        pool.emplace_back([&body, b, e, k] { body(b, e, static_cast<int>(k)); });
    }
    for (auto& th : pool) th.join();
}

double rpow(const PExponent& p, double r) { return std::pow(r, p.value()); }

}  // namespace

Domain ball_domain(const Vec& center, double radius) {
    if (!(radius > 0.0)) throw InvalidArgument("ball radius must be positive");
    require_dim(static_cast<int>(center.size()));
    Domain d;
    d.kind = "ball";
    d.signed_distance = [center, radius](const Vec& x) { return (x - center).norm() - radius; };
    d.lower = center.array() - radius;
    d.upper = center.array() + radius;
    return d;
}

Domain box_domain(const Vec& lower, const Vec& upper) {
    require_dim(static_cast<int>(lower.size()));
    if (lower.size() != upper.size() || !(lower.array() < upper.array()).all())
        throw InvalidArgument("box needs lower < upper in every coordinate");
    const Vec center = 0.5 * (lower + upper);
    const Vec half = 0.5 * (upper - lower);
    Domain d;
    d.kind = "box";
    d.signed_distance = [center, half](const Vec& x) {
        const Vec q = (x - center).cwiseAbs() - half;
        return q.cwiseMax(0.0).norm() + std::min(q.maxCoeff(), 0.0);
    };
    d.lower = lower;
    d.upper = upper;
    return d;
}

Vec GridField::coordinate(std::size_t index) const {
    const auto m = multi_index(index);
    Vec x(dim);
    for (int k = 0; k < dim; ++k) x[k] = (std::round(origin[k] / h) + m[k]) * h;
    return x;
}

std::array<int, 3> GridField::multi_index(std::size_t index) const {
    std::array<int, 3> m{0, 0, 0};
    for (int k = 0; k < dim; ++k) {
        m[k] = static_cast<int>(index % static_cast<std::size_t>(shape[k]));
        index /= static_cast<std::size_t>(shape[k]);
    }
    return m;
}

GridField build_grid(const DppProblem& problem, double h) {
    const int dim = problem.dim();
    require_dim(dim);
    const double r = problem.r;
    if (!(r > 0.0) || !std::isfinite(r)) throw InvalidArgument("horizon radius r must be positive");
    if (!(h > 0.0) || !std::isfinite(h)) throw InvalidArgument("lattice spacing must be positive");
    if (h > r / 3.0 * (1.0 + 1e-12)) throw GridTooCoarse("lattice spacing h must satisfy h <= r/3");
    if (!problem.G) throw InvalidArgument("boundary data G is required");

    GridField g;
    g.dim = dim;
    g.h = h;
    g.origin = Vec(dim);
    const double pad = r + 2.0 * h;
    std::array<long, 3> first{0, 0, 0};
    std::size_t total = 1;
    for (int k = 0; k < dim; ++k) {
        first[k] = static_cast<long>(std::floor((problem.domain.lower[k] - pad) / h));
        const long last = static_cast<long>(std::ceil((problem.domain.upper[k] + pad) / h));
        g.shape[k] = static_cast<int>(last - first[k] + 1);
        g.origin[k] = static_cast<double>(first[k]) * h;
        total *= static_cast<std::size_t>(g.shape[k]);
    }
    std::ptrdiff_t stride = 1;
    for (int k = 0; k < dim; ++k) {
        g.strides[k] = stride;
        stride *= g.shape[k];
    }
    g.classes.assign(total, NodeClass::Outside);
    g.values.assign(total, 0.0);

    // lattice coordinates carry rounding, so nodes exactly on the collar edge may sit a few ulps past it
    const double edge = r * (1.0 + 1e-12);
    const double halo = (r + std::sqrt(static_cast<double>(dim)) * h) * (1.0 + 1e-12);
    Vec x(dim);
    for (std::size_t i = 0; i < total; ++i) {
        const auto m = g.multi_index(i);
        for (int k = 0; k < dim; ++k) x[k] = static_cast<double>(first[k] + m[k]) * h;
        const double sd = problem.domain.signed_distance(x);
        if (sd < 0.0) {
            g.classes[i] = NodeClass::Interior;
            g.interior.push_back(i);
        } else if (sd <= edge) {
            g.classes[i] = NodeClass::Collar;
            g.values[i] = problem.G(x);
        } else if (sd <= halo) {
            g.classes[i] = NodeClass::Halo;
            g.values[i] = problem.G(x);
        }
    }
    if (g.interior.empty()) throw EmptyDomain("no lattice node lies inside the domain");
    return g;
}

BallStencil::BallStencil(const GridField& grid, double r, const DppOptions& options) {
    const int dim = grid.dim;
    require_dim(dim);
    if (options.radial_nodes < 1 || options.angular_nodes < 2)
        throw InvalidArgument("ball rule needs radial_nodes >= 1 and angular_nodes >= 2");
    const BallRule rule = make_ball_rule(options.radial_nodes, uniform_sphere_rule(dim, options.angular_nodes));
    const int corners = 1 << dim;
    weights_ = rule.weights;
    begin_.reserve(rule.size() + 1);
    for (std::size_t q = 0; q < rule.size(); ++q) {
        begin_.push_back(static_cast<std::uint32_t>(offsets_.size()));
        std::array<int, 3> base{0, 0, 0};
        std::array<double, 3> frac{0.0, 0.0, 0.0};
        for (int k = 0; k < dim; ++k) {
            const double s = r * rule.coords[q * dim + k] / grid.h;
            const double fl = std::floor(s);
            base[k] = static_cast<int>(fl);
            frac[k] = s - fl;
        }
        for (int c = 0; c < corners; ++c) {
            double w = 1.0;
            std::array<int, 3> step{0, 0, 0};
            std::ptrdiff_t off = 0;
            for (int k = 0; k < dim; ++k) {
                const int e = (c >> k) & 1;
                w *= e ? frac[k] : 1.0 - frac[k];
                step[k] = base[k] + e;
                off += static_cast<std::ptrdiff_t>(step[k]) * grid.strides[k];
            }
            if (w == 0.0) continue;
            offsets_.push_back(off);
            corner_weights_.push_back(w);
            corner_steps_.push_back(step);
        }
    }
    begin_.push_back(static_cast<std::uint32_t>(offsets_.size()));
}

void BallStencil::gather(const std::vector<double>& values, std::size_t index, std::vector<double>& out) const {
    out.resize(weights_.size());
    const double* base = values.data() + index;
    for (std::size_t q = 0; q < weights_.size(); ++q) {
        double v = 0.0;
        for (std::uint32_t c = begin_[q]; c < begin_[q + 1]; ++c) v += corner_weights_[c] * base[offsets_[c]];
        out[q] = v;
    }
}

void BallStencil::validate(const GridField& grid) const {
    for (std::size_t index : grid.interior) {
        const auto m = grid.multi_index(index);
        for (const auto& step : corner_steps_) {
            std::size_t flat = 0;
            for (int k = 0; k < grid.dim; ++k) {
                const int j = m[k] + step[k];
                if (j < 0 || j >= grid.shape[k])
                    throw InterpolationOutOfHull("ball stencil leaves the lattice");
                flat += static_cast<std::size_t>(j) * static_cast<std::size_t>(grid.strides[k]);
            }
            if (grid.classes[flat] == NodeClass::Outside)
                throw InterpolationOutOfHull("ball stencil reaches a node outside the collar");
        }
    }
}

BallAverageFunctional::BallAverageFunctional(const PExponent& p, const BallStencil& stencil,
                                             std::vector<double> samples)
    : p_(p), stencil_(&stencil), samples_(std::move(samples)) {
    if (samples_.size() != stencil.points()) throw InvalidArgument("sample count does not match stencil");
    const auto [lo, hi] = std::minmax_element(samples_.begin(), samples_.end());
    min_ = *lo;
    max_ = *hi;
}

double BallAverageFunctional::operator()(double a) const {
    double s = 0.0;
    for (std::size_t q = 0; q < samples_.size(); ++q) s += stencil_->weight(q) * jp(p_, samples_[q] - a);
    return s;
}

double BallAverageFunctional::derivative(double a) const {
    double s = 0.0;
    for (std::size_t q = 0; q < samples_.size(); ++q)
        s += stencil_->weight(q) * jp_derivative(p_, samples_[q] - a);
    return -s;
}

double BallAverageFunctional::evaluate(double a, double& derivative) const {
    double s = 0.0, ds = 0.0;
    const std::size_t n = samples_.size();
    if (p_.is_three()) {
        for (std::size_t q = 0; q < n; ++q) {
            const double t = samples_[q] - a, w = stencil_->weight(q) * std::fabs(t);
            s += w * t;
            ds += w;
        }
        derivative = -2.0 * ds;
        return s;
    }
    if (p_.is_two()) {
        for (std::size_t q = 0; q < n; ++q) s += stencil_->weight(q) * (samples_[q] - a);
        derivative = -1.0;
        return s;
    }
    for (std::size_t q = 0; q < n; ++q) {
        const double t = samples_[q] - a;
        if (t == 0.0) {
            ds = std::numeric_limits<double>::infinity();
            continue;
        }
        const double w = stencil_->weight(q);
        const double m = jp(p_, std::fabs(t));  // |t|^{p-1}
        s += w * std::copysign(m, t);
        ds += w * m / std::fabs(t);
    }
    derivative = -p_.minus_one() * ds;
    return s;
}

BallAverageFunctional ball_average_field(const PExponent& p, const GridField& field,
                                         const BallStencil& stencil, std::size_t index) {
    if (index >= field.size() || field.classes[index] != NodeClass::Interior)
        throw InvalidArgument("ball_average_field needs an Interior node");
    std::vector<double> samples;
    stencil.gather(field.values, index, samples);
    return BallAverageFunctional(p, stencil, std::move(samples));
}

PointSolve pointwise_solve(const BallAverageFunctional& F, double f_value, double D, double r,
                           const DppOptions& options, std::optional<double> start) {
    const PExponent& p = F.p();
    const double drp = D * rpow(p, r);
    const double target = -drp * f_value;
    const double shift = jp_inverse(p, drp * f_value);
    double lo = F.min_sample() + shift;
    double hi = F.max_sample() + shift;
    const double tol = options.root_tol_a;
    PointSolve out;

    auto g = [&](double a) {
        ++out.evaluations;
        return F(a) - target;
    };
    double dg = 0.0;
    auto g_and_slope = [&](double a) {
        ++out.evaluations;
        return F.evaluate(a, dg) - target;
    };

    if (options.check_bracket) {
        const double scale = std::fabs(target) + jp(p, F.max_sample() - F.min_sample()) + 1e-300;
        const double slack = 1e-12 * scale;
        const double glo = g(lo), ghi = g(hi);
        if (glo < -slack || ghi > slack)
            throw BracketFailure("no sign change across the pointwise bracket");
    }
    if (hi - lo <= tol) {
        out.a = 0.5 * (lo + hi);
        out.residual = g(out.a);
        out.width = hi - lo;
        return out;
    }

    double a = start ? std::clamp(*start, lo, hi) : 0.5 * (lo + hi);
    double step_old = hi - lo, step = step_old;
    for (int it = 0; it < 400; ++it) {
        const double ga = g_and_slope(a);
        if (ga == 0.0) {
            out.a = a;
            out.residual = 0.0;
            out.width = 0.0;
            return out;
        }
        if (ga > 0.0)
            lo = a;
        else
            hi = a;
        if (hi - lo <= tol) {
            out.a = a;
            out.residual = ga;
            out.width = hi - lo;
            return out;
        }
        const bool newton_ok = std::isfinite(dg) && dg < 0.0;
        double next = newton_ok ? a - ga / dg : lo - 1.0;
        if (newton_ok && std::fabs(ga / dg) < 0.5 * tol) {
            // Newton has settled: probe one tolerance step towards the root to close the bracket.
            next = ga > 0.0 ? std::min(a + tol, 0.5 * (a + hi)) : std::max(a - tol, 0.5 * (a + lo));
        } else if (!(next > lo && next < hi) || std::fabs(2.0 * ga) > std::fabs(step_old * dg)) {
            next = 0.5 * (lo + hi);
        }
        step_old = step;
        step = std::fabs(next - a);
        a = next;
    }
    throw BracketFailure("pointwise solve did not close its bracket");
}

double Barrier::operator()(const Vec& x, double p) const {
    return C - amplitude * std::pow((x - z).norm(), p / (p - 1.0));
}

Barrier barrier(const DppProblem& problem, const GridField& grid, const DppOptions& options) {
    const int dim = grid.dim;
    const PExponent& p = problem.p;
    double f_norm = 0.0, g_norm = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid.classes[i] == NodeClass::Interior && problem.f)
            f_norm = sup_abs(f_norm, problem.f(grid.coordinate(i)));
        else if (grid.is_boundary(i))
            g_norm = sup_abs(g_norm, grid.values[i]);
    }
    const Vec lower = problem.domain.lower, upper = problem.domain.upper;
    Barrier b;
    b.z = 0.5 * (lower + upper);
    b.z[0] += (upper - lower).norm() + 2.0;

    const double q = p.conjugate();
    std::vector<double> dist_q(grid.size());
    double max_dist_q = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        dist_q[i] = std::pow((grid.coordinate(i) - b.z).norm(), q);
        if (grid.classes[i] != NodeClass::Outside) max_dist_q = std::max(max_dist_q, dist_q[i]);
    }

    const BallStencil stencil(grid, problem.r, options);
    const double D_const = cached_constants(dim, p).D;
    const double drp = D_const * rpow(p, problem.r);
    std::vector<double> samples;
    b.D_margin = 0.25 * f_norm + 1.0;
    for (int attempt = 0; attempt < 64; ++attempt) {
        b.D = f_norm + b.D_margin;
        b.amplitude = std::pow(b.D / dim, 1.0 / p.minus_one()) / q;
        b.C = g_norm + b.amplitude * max_dist_q;
        b.nodal.resize(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) b.nodal[i] = b.C - b.amplitude * dist_q[i];

        double excess = std::numeric_limits<double>::infinity();
        for (std::size_t i : grid.interior) {
            stencil.gather(b.nodal, i, samples);
            const BallAverageFunctional F(p, stencil, samples);
            excess = std::min(excess, -F(b.nodal[i]) / drp - f_norm);
        }
        b.min_discrete_excess = excess;
        if (excess >= 0.0) break;
        b.D_margin *= 2.0;
    }
    if (!(b.min_discrete_excess >= 0.0)) throw BracketFailure("could not build a discrete barrier");
    b.sup_norm = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (grid.classes[i] != NodeClass::Outside) b.sup_norm = sup_abs(b.sup_norm, b.nodal[i]);
    return b;
}

GridField paper_initial_field(const DppProblem&, const GridField& grid, const Barrier& psi) {
    double inf_g = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (grid.is_boundary(i)) inf_g = std::min(inf_g, grid.values[i]);
    GridField u0 = grid;
    for (std::size_t i : grid.interior) u0.values[i] = inf_g - psi.nodal[i];
    return u0;
}

GridField extension_initial_field(const DppProblem& problem, const GridField& grid) {
    GridField u0 = grid;
    for (std::size_t i : grid.interior) u0.values[i] = problem.G(grid.coordinate(i));
    return u0;
}

double scheme_value(const DppProblem& problem, const GridField& field, const BallStencil& stencil,
                    std::size_t index, double t) {
    const BallAverageFunctional F = ball_average_field(problem.p, field, stencil, index);
    const double drp = cached_constants(field.dim, problem.p).D * rpow(problem.p, problem.r);
    const double fx = problem.f ? problem.f(field.coordinate(index)) : 0.0;
    return -F(t) / drp - fx;
}

double scheme_residual(const DppProblem& problem, const GridField& field, const DppOptions& options) {
    const BallStencil stencil(field, problem.r, options);
    stencil.validate(field);
    double sup = 0.0;
    for (std::size_t i = 0; i < field.size(); ++i) {
        if (field.classes[i] == NodeClass::Interior)
            sup = sup_abs(sup, scheme_value(problem, field, stencil, i, field.values[i]));
        else if (field.is_boundary(i))
            sup = sup_abs(sup, field.values[i] - problem.G(field.coordinate(i)));
    }
    return sup;
}

std::pair<GridField, SolverReport> picard_iterate(const DppProblem& problem, const GridField& start,
                                                  const DppOptions& options, const Barrier* psi) {
    if (start.interior.empty()) throw EmptyDomain("grid has no Interior nodes");
    if (options.max_iter < 1) throw InvalidArgument("max_iter must be positive");
    if (!(options.tol > 0.0)) throw InvalidArgument("tol must be positive");
    if (psi && psi->nodal.size() != start.size()) throw InvalidArgument("barrier does not match grid");
    const PExponent& p = problem.p;
    const BallStencil stencil(start, problem.r, options);
    stencil.validate(start);
    const double D = cached_constants(start.dim, p).D;

    const std::size_t n = start.interior.size();
    std::vector<double> fvals(n, 0.0);
    if (problem.f)
        for (std::size_t k = 0; k < n; ++k) fvals[k] = problem.f(start.coordinate(start.interior[k]));

    GridField cur = start;
    GridField next = start;
    SolverReport report;
    const int threads = options.gauss_seidel ? 1 : std::max(1, options.threads);
    struct Partial {
        double delta = 0.0, width = 0.0;
        std::size_t mono = 0, above = 0, evals = 0;
        std::vector<double> samples;
    };
    std::vector<Partial> parts(static_cast<std::size_t>(threads));
    const double slack = 2.0 * options.root_tol_a;

    for (int it = 1; it <= options.max_iter; ++it) {
        for (auto& part : parts) part.delta = part.width = 0.0, part.mono = part.above = part.evals = 0;
        std::vector<double>& source = options.gauss_seidel ? next.values : cur.values;
        parallel_chunks(n, threads, [&](std::size_t b, std::size_t e, int t) {
            Partial& part = parts[static_cast<std::size_t>(t)];
            for (std::size_t k = b; k < e; ++k) {
                const std::size_t idx = start.interior[k];
                stencil.gather(source, idx, part.samples);
                const BallAverageFunctional F(p, stencil, part.samples);
                const double old = cur.values[idx];
                const PointSolve s = pointwise_solve(F, fvals[k], D, problem.r, options, old);
                next.values[idx] = s.a;
                part.delta = std::max(part.delta, std::fabs(s.a - old));
                part.width = std::max(part.width, s.width);
                part.evals += static_cast<std::size_t>(s.evaluations);
                if (s.a < old - slack) ++part.mono;
                if (psi && s.a > psi->nodal[idx] + slack) ++part.above;
            }
        });
        double delta = 0.0;
        for (const auto& part : parts) {
            delta = std::max(delta, part.delta);
            report.max_root_width = std::max(report.max_root_width, part.width);
            if (!options.gauss_seidel) report.monotonicity_violations += part.mono;
            report.barrier_violations += part.above;
            report.evaluations += part.evals;
        }
        if (options.check_bracket) report.bracket_checks += n;
        report.residual_history.push_back(delta);
        report.iterations = it;
        if (options.gauss_seidel)
            cur.values = next.values;
        else
            std::swap(cur.values, next.values);
        if (delta <= options.tol) {
            report.converged = true;
            break;
        }
    }
    report.max_iter_exceeded = !report.converged;
    report.scheme_residual = scheme_residual(problem, cur, options);
    if (problem.exact) {
        double err = 0.0;
        for (std::size_t idx : cur.interior)
            err = sup_abs(err, cur.values[idx] - problem.exact(cur.coordinate(idx)));
        report.sup_error = err;
    }
    return {std::move(cur), std::move(report)};
}

DppSolution solve_dpp(const DppProblem& problem, double h, const DppOptions& options) {
    const GridField grid = build_grid(problem, h);
    Barrier psi = barrier(problem, grid, options);
    const GridField u0 = options.start_from_extension ? extension_initial_field(problem, grid)
                                                      : paper_initial_field(problem, grid, psi);
    auto [field, report] = picard_iterate(problem, u0, options, &psi);
    return {std::move(field), std::move(report), std::move(psi)};
}

ComparisonResult comparison_check(const DppProblem& base, double h, int trials, std::uint64_t seed,
                                  const DppOptions& options) {
    if (trials < 1) throw InvalidArgument("comparison needs at least one trial");
    const int dim = base.dim();
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    DppOptions inner = options;
    inner.tol = options.tol * 1e-2;

    auto solve = [&](const DppProblem& prob) { return solve_dpp(prob, h, inner).field; };
    ComparisonResult out;
    out.trials = trials;
    out.max_excess = -std::numeric_limits<double>::infinity();
    for (int t = 0; t < trials; ++t) {
        Vec a(dim), w(dim), g(dim);
        for (int k = 0; k < dim; ++k) a[k] = u(gen), w[k] = 3.0 * u(gen), g[k] = u(gen);
        const double c1 = u(gen), s1 = 0.5 * u(gen), f0 = 2.0 * u(gen);
        const double dc = 0.5 * (1.0 + u(gen)), dq = 0.5 * (1.0 + u(gen)), df = 0.5 * (1.0 + u(gen));
        const int kind = t % 4;  // identical, G shifted by 1, f raised by 1, random ordered pair

        DppProblem p1 = base, p2 = base;
        p1.G = [=](const Vec& x) { return c1 + a.dot(x) + s1 * std::sin(w.dot(x)); };
        p1.f = [=](const Vec& x) { return f0 + 0.5 * g.dot(x); };
        p1.exact = nullptr;
        p2.exact = nullptr;
        const auto G1 = p1.G;
        const auto f1 = p1.f;
        switch (kind) {
            case 0:
                p2.G = G1, p2.f = f1;
                break;
            case 1:
                p2.G = [=](const Vec& x) { return G1(x) + 1.0; }, p2.f = f1;
                break;
            case 2:
                p2.G = G1, p2.f = [=](const Vec& x) { return f1(x) + 1.0; };
                break;
            default:
                p2.G = [=](const Vec& x) { return G1(x) + dc + dq * x.squaredNorm(); };
                p2.f = [=](const Vec& x) { return f1(x) + df * (1.0 + std::cos(x[0])); };
        }
        const GridField u1 = solve(p1);
        const GridField u2 = solve(p2);
        for (std::size_t i = 0; i < u1.size(); ++i) {
            if (u1.classes[i] == NodeClass::Outside) continue;
            const double excess = u1.values[i] - u2.values[i];
            out.max_excess = std::max(out.max_excess, excess);
            if (excess > 2.0 * options.tol) ++out.violations;
        }
        if (t < 4) {
            const double shift = 1.0 + 2.0 * std::fabs(u(gen));
            DppProblem p3 = p1;
            p3.G = [=](const Vec& x) { return G1(x) + shift; };
            const GridField u3 = solve(p3);
            for (std::size_t i = 0; i < u1.size(); ++i)
                if (u1.classes[i] != NodeClass::Outside)
                    out.max_shift_error = std::max(out.max_shift_error, std::fabs(u3.values[i] - u1.values[i] - shift));
        }
    }
    return out;
}

std::vector<ConvergenceRow> convergence_study(const DppProblem& problem, const std::vector<double>& radii,
                                              double h_ratio, const DppOptions& options) {
    if (!problem.exact) throw InvalidArgument("convergence study needs an exact solution");
    if (radii.empty()) throw InvalidArgument("convergence study needs at least one radius");
    if (!(h_ratio > 0.0)) throw InvalidArgument("h ratio must be positive");
    for (std::size_t i = 1; i < radii.size(); ++i)
        if (!(radii[i] < radii[i - 1])) throw InvalidArgument("radii must be strictly decreasing");
    std::vector<ConvergenceRow> rows;
    for (double r : radii) {
        DppProblem prob = problem;
        prob.r = r;
        const auto t0 = std::chrono::steady_clock::now();
        const DppSolution sol = solve_dpp(prob, h_ratio * r, options);
        ConvergenceRow row;
        row.r = r;
        row.h = h_ratio * r;
        row.sup_error = *sol.report.sup_error;
        row.iterations = sol.report.iterations;
        row.converged = sol.report.converged;
        row.monotonicity_violations = sol.report.monotonicity_violations;
        row.barrier_violations = sol.report.barrier_violations;
        row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        rows.push_back(row);
    }
    return rows;
}

}  // namespace pmvf
