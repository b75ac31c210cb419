#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "pmvf/constants.hpp"
#include "pmvf/dpp.hpp"
#include "pmvf/mvf.hpp"

namespace {

using namespace pmvf;

Vec point(double a, double b) {
    Vec v(2);
    v << a, b;
    return v;
}

DppProblem disc_problem(double p, double r, ScalarField G, ScalarField f = {}) {
    DppProblem prob;
    prob.domain = ball_domain(Vec::Zero(2), 1.0);
    prob.p = PExponent(p);
    prob.r = r;
    prob.G = std::move(G);
    prob.f = f ? std::move(f) : [](const Vec&) { return 0.0; };
    return prob;
}

DppProblem manufactured(double p, double r) {
    const PExponent pe(p);
    const Vec z = point(2, 0);
    const double q = pe.conjugate();
    ScalarField u = [z, q](const Vec& x) { return std::pow((x - z).norm(), q); };
    const double f = -2.0 * std::pow(q, p - 1.0);
    DppProblem prob = disc_problem(p, r, u, [f](const Vec&) { return f; });
    prob.exact = u;
    return prob;
}

TEST(BuildGrid, ClassesOnTheUnitDisc) {
    const DppProblem prob = disc_problem(2, 0.2, [](const Vec&) { return 0.0; });
    const GridField g = build_grid(prob, 0.05);
    std::size_t interior = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Vec x = g.coordinate(i);
        // lattice points are integer multiples of h; classify them in exact integer arithmetic
        const long a = std::lround(x[0] / 0.05), b = std::lround(x[1] / 0.05);
        EXPECT_NEAR(x[0] / 0.05, a, 1e-9);
        const long n2 = a * a + b * b;
        if (n2 < 400) {
            EXPECT_EQ(g.classes[i], NodeClass::Interior);
            ++interior;
        } else if (n2 <= 576) {
            EXPECT_EQ(g.classes[i], NodeClass::Collar);
        } else {
            EXPECT_NE(g.classes[i], NodeClass::Interior);
            EXPECT_NE(g.classes[i], NodeClass::Collar);
        }
    }
    EXPECT_EQ(interior, g.interior.size());
    // lattice points of Z^2 strictly inside a disc of radius 20
    std::size_t count = 0;
    for (int i = -20; i <= 20; ++i)
        for (int j = -20; j <= 20; ++j) count += i * i + j * j < 400;
    EXPECT_EQ(interior, count);
}

TEST(BuildGrid, Preconditions) {
    const DppProblem prob = disc_problem(2, 0.2, [](const Vec&) { return 0.0; });
    EXPECT_THROW(build_grid(prob, 0.2), GridTooCoarse);
    EXPECT_NO_THROW(build_grid(prob, 0.2 / 3));
    DppProblem tiny = prob;
    tiny.domain = ball_domain(point(0.025, 0.025), 0.01);
    EXPECT_THROW(build_grid(tiny, 0.05), EmptyDomain);
}

TEST(BallAverage, QuadraticFieldMoment) {
    const double h = 0.05;
    const DppProblem prob = disc_problem(2, 0.2, [](const Vec&) { return 0.0; });
    GridField g = build_grid(prob, h);
    for (std::size_t i = 0; i < g.size(); ++i) g.values[i] = g.coordinate(i).squaredNorm();
    const BallStencil stencil(g, 0.2);
    std::size_t centre = 0;
    for (std::size_t i : g.interior)
        if (g.coordinate(i).norm() < 1e-12) centre = i;
    const BallAverageFunctional F = ball_average_field(PExponent(2), g, stencil, centre);
    // bilinear interpolation of |x|^2 overshoots by at most h^2/2
    EXPECT_GE(F(0.0), 0.02 - 1e-14);
    EXPECT_LE(F(0.0), 0.02 + h * h / 2);
}

TEST(BallAverage, ConstantAndLinearFields) {
    const DppProblem prob = disc_problem(3, 0.2, [](const Vec&) { return 0.0; });
    GridField g = build_grid(prob, 0.05);
    const BallStencil stencil(g, 0.2);
    const std::size_t idx = g.interior[g.interior.size() / 3];
    std::fill(g.values.begin(), g.values.end(), 1.5);
    const BallAverageFunctional Fc = ball_average_field(PExponent(3), g, stencil, idx);
    for (double a : {-1.0, 0.5, 2.0}) EXPECT_NEAR(Fc(a), jp(PExponent(3), 1.5 - a), 1e-14);
    for (std::size_t i = 0; i < g.size(); ++i) g.values[i] = 0.3 + g.coordinate(i).dot(point(0.8, -0.6));
    const BallAverageFunctional Fl = ball_average_field(PExponent(3), g, stencil, idx);
    EXPECT_NEAR(Fl(g.values[idx]), 0.0, 1e-15);
    EXPECT_LT(Fl(1.0), Fl(0.0));
}

TEST(PointwiseSolve, ClosedForms) {
    const DppProblem prob = disc_problem(1.5, 0.2, [](const Vec&) { return 0.0; });
    GridField g = build_grid(prob, 0.05);
    const BallStencil stencil(g, 0.2);
    const std::size_t idx = g.interior[7];
    for (double pv : {1.5, 2.0, 3.0, 4.2}) {
        const PExponent p(pv);
        const double D = compute_constants(2, p).D;
        std::fill(g.values.begin(), g.values.end(), -0.7);
        const BallAverageFunctional Fc = ball_average_field(p, g, stencil, idx);
        EXPECT_NEAR(pointwise_solve(Fc, 0.0, D, 0.2).a, -0.7, 1e-12);
        for (double f : {-3.0, 2.0}) {
            const PointSolve s = pointwise_solve(Fc, f, D, 0.2);
            EXPECT_NEAR(s.a, -0.7 + jp_inverse(p, D * std::pow(0.2, pv) * f), 2e-12) << pv << ' ' << f;
            EXPECT_LE(s.width, 1e-12);
        }
        for (std::size_t i = 0; i < g.size(); ++i) g.values[i] = g.coordinate(i).dot(point(1.1, 0.4));
        const BallAverageFunctional Fl = ball_average_field(p, g, stencil, idx);
        EXPECT_NEAR(pointwise_solve(Fl, 0.0, D, 0.2).a, g.values[idx], 1e-12);
    }
}

TEST(Barrier, IsASupersolutionAboveTheData) {
    for (double pv : {1.5, 3.0}) {
        const DppProblem prob = manufactured(pv, 0.2);
        const GridField g = build_grid(prob, 0.05);
        const Barrier psi = barrier(prob, g);
        EXPECT_GE(psi.min_discrete_excess, 0.0);
        const double fnorm = 2.0 * std::pow(PExponent(pv).conjugate(), pv - 1.0);
        std::mt19937_64 gen(4);
        std::uniform_real_distribution<double> u(-0.7, 0.7);
        const ScalarField field = [&](const Vec& x) { return psi(x, pv); };
        for (int k = 0; k < 20; ++k) {
            const Vec x = point(u(gen), u(gen));
            EXPECT_GE(-mvf_ball(PExponent(pv), field, x, 0.2), fnorm) << pv;
        }
        for (std::size_t i = 0; i < g.size(); ++i)
            if (g.is_boundary(i)) EXPECT_GE(psi.nodal[i], prob.G(g.coordinate(i)));
    }
}

TEST(Barrier, ZeroDataGivesConstantLevel) {
    const DppProblem prob = disc_problem(2, 0.3, [](const Vec&) { return 0.0; });
    const GridField g = build_grid(prob, 0.1);
    const Barrier psi = barrier(prob, g);
    for (std::size_t i = 0; i < g.size(); ++i)
        if (g.is_boundary(i)) EXPECT_GE(psi.nodal[i], 0.0);
}

TEST(Picard, LinearDataIsReproduced) {
    for (double pv : {1.5, 3.0}) {
        const ScalarField l = [](const Vec& x) { return 0.2 + 0.9 * x[0] - 0.4 * x[1]; };
        DppProblem prob = disc_problem(pv, 0.3, l);
        prob.exact = l;
        const DppSolution sol = solve_dpp(prob, 0.075);
        EXPECT_TRUE(sol.report.converged);
        EXPECT_LT(*sol.report.sup_error, 1e-4);
        EXPECT_EQ(sol.report.monotonicity_violations, 0u);
        EXPECT_EQ(sol.report.barrier_violations, 0u);
    }
}

TEST(Picard, ConstantDataIsAFixedPoint) {
    const ScalarField c = [](const Vec&) { return -1.25; };
    DppProblem prob = disc_problem(3, 0.3, c);
    prob.exact = c;
    DppOptions opt;
    opt.start_from_extension = true;
    const DppSolution sol = solve_dpp(prob, 0.1, opt);
    EXPECT_EQ(sol.report.iterations, 1);
    EXPECT_LE(*sol.report.sup_error, 1e-12);
    EXPECT_LE(scheme_residual(prob, sol.field), 1e-14);
}

TEST(Picard, IteratesAreMonotoneAndBounded) {
    const DppProblem prob = manufactured(3, 0.3);
    const DppSolution sol = solve_dpp(prob, 0.075);
    EXPECT_TRUE(sol.report.converged);
    EXPECT_EQ(sol.report.monotonicity_violations, 0u);
    EXPECT_EQ(sol.report.barrier_violations, 0u);
    double sup = 0.0;
    for (std::size_t i = 0; i < sol.field.size(); ++i)
        if (sol.field.classes[i] != NodeClass::Outside) sup = std::max(sup, std::fabs(sol.field.values[i]));
    EXPECT_LE(sup, sol.barrier.sup_norm);
    const double drp = compute_constants(2, prob.p).D * std::pow(prob.r, 3.0);
    EXPECT_LE(sol.report.scheme_residual, 1e-9 * (1.0 + 1.0 / drp) * 10);
}

TEST(Picard, ThreadCountDoesNotChangeTheResult) {
    const DppProblem prob = manufactured(1.5, 0.3);
    DppOptions one, three;
    three.threads = 3;
    const DppSolution a = solve_dpp(prob, 0.075, one);
    const DppSolution b = solve_dpp(prob, 0.075, three);
    EXPECT_EQ(a.report.iterations, b.report.iterations);
    EXPECT_EQ(a.field.values, b.field.values);
}

TEST(Picard, GaussSeidelReachesTheSameFixedPoint) {
    const DppProblem prob = manufactured(3, 0.3);
    DppOptions gs;
    gs.gauss_seidel = true;
    gs.tol = 1e-11;
    DppOptions jac;
    jac.tol = 1e-11;
    const DppSolution a = solve_dpp(prob, 0.075, jac);
    const DppSolution b = solve_dpp(prob, 0.075, gs);
    EXPECT_LT(b.report.iterations, a.report.iterations);
    for (std::size_t i : a.field.interior) EXPECT_NEAR(a.field.values[i], b.field.values[i], 1e-8);
}

TEST(Picard, StopsAtTheIterationCap) {
    const DppProblem prob = manufactured(3, 0.3);
    DppOptions opt;
    opt.max_iter = 5;
    const DppSolution sol = solve_dpp(prob, 0.075, opt);
    EXPECT_FALSE(sol.report.converged);
    EXPECT_TRUE(sol.report.max_iter_exceeded);
    EXPECT_EQ(sol.report.iterations, 5);
}

TEST(Scheme, MonotoneInTheField) {
    const DppProblem prob = manufactured(3, 0.2);
    const GridField g = build_grid(prob, 0.05);
    const BallStencil stencil(g, 0.2);
    std::mt19937_64 gen(8);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<std::size_t> pick(0, g.interior.size() - 1);
    for (int k = 0; k < 50; ++k) {
        GridField phi = g, psi = g;
        for (std::size_t i = 0; i < g.size(); ++i) {
            phi.values[i] = u(gen);
            psi.values[i] = phi.values[i] + 0.5 * (1.0 + u(gen)) * (k % 2);
        }
        const std::size_t idx = g.interior[pick(gen)];
        const double t = 2.0 * u(gen);
        EXPECT_LE(scheme_value(prob, psi, stencil, idx, t), scheme_value(prob, phi, stencil, idx, t) + 1e-12);
    }
}

TEST(Scheme, ResidualOfAnExtensionWithGarbage) {
    const DppProblem prob = manufactured(3, 0.3);
    const GridField g = build_grid(prob, 0.1);
    GridField field = extension_initial_field(prob, g);
    for (std::size_t i : field.interior) field.values[i] = 100.0;
    EXPECT_GT(scheme_residual(prob, field), 1.0);
    GridField ext = extension_initial_field(prob, g);
    for (std::size_t i = 0; i < ext.size(); ++i)
        if (ext.is_boundary(i)) EXPECT_EQ(ext.values[i], prob.G(ext.coordinate(i)));
}

TEST(Comparison, OrderedDataGiveOrderedSolutions) {
    const DppProblem base = disc_problem(3, 0.3, [](const Vec& x) { return x[0]; });
    const ComparisonResult c = comparison_check(base, 0.1, 4, 21);
    EXPECT_EQ(c.trials, 4);
    EXPECT_EQ(c.violations, 0u);
    EXPECT_LE(c.max_shift_error, 2e-9);
    EXPECT_THROW(comparison_check(base, 0.1, 0, 1), InvalidArgument);
}

TEST(ConvergenceStudy, Preconditions) {
    const DppProblem prob = manufactured(3, 0.3);
    EXPECT_THROW(convergence_study(prob, {0.3, 0.3}, 0.25), InvalidArgument);
    EXPECT_THROW(convergence_study(prob, {}, 0.25), InvalidArgument);
    DppProblem no_exact = prob;
    no_exact.exact = nullptr;
    EXPECT_THROW(convergence_study(no_exact, {0.3}, 0.25), InvalidArgument);
    const auto rows = convergence_study(prob, {0.3}, 0.25);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_TRUE(rows[0].converged);
    EXPECT_DOUBLE_EQ(rows[0].h, 0.075);
}

}  // namespace
