#include <gtest/gtest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>

#include "pmvf/quadrature.hpp"

namespace {

using namespace pmvf;

Vec point(double a, double b) {
    Vec v(2);
    v << a, b;
    return v;
}

Vec point(double a, double b, double c) {
    Vec v(3);
    v << a, b, c;
    return v;
}

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
    const GaussLegendre gl = gauss_legendre(8);
    for (int k = 0; k <= 15; ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) s += gl.weights[i] * std::pow(gl.nodes[i], k);
        EXPECT_NEAR(s, k % 2 ? 0.0 : 2.0 / (k + 1), 1e-14) << k;
    }
}

TEST(SphereRule, AntipodalPairsAndUnitWeight) {
    for (int d : {1, 2, 3}) {
        const SphereRule rule = uniform_sphere_rule(d, 16);
        double w = 0.0;
        for (std::size_t i = 0; i < rule.size(); ++i) w += rule.weights[i];
        EXPECT_NEAR(w, 1.0, 1e-14);
        for (std::size_t i = 0; i + 1 < rule.size(); i += 2) {
            EXPECT_EQ(rule.node(i + 1), Vec(-rule.node(i)));
            EXPECT_NEAR(rule.node(i).norm(), 1.0, 1e-15);
        }
    }
}

TEST(SphereAverage, Examples) {
    const SphereRule rule = uniform_sphere_rule(2, 32);
    const Vec c = point(0.3, -1.0);
    EXPECT_NEAR(sphere_average(rule, [](const Vec&) { return 2.5; }, c, 0.7), 2.5, 1e-14);
    EXPECT_NEAR(sphere_average(rule, [&](const Vec& y) { return y[0] - c[0]; }, c, 0.7), 0.0, 1e-15);
    // (1/2 pi) int cos^2 computed with an unrelated 1D rule
    boost::math::quadrature::tanh_sinh<double> ts;
    const double oracle =
        ts.integrate([](double t) { return std::cos(t) * std::cos(t); }, 0.0, 2 * std::numbers::pi) /
        (2 * std::numbers::pi);
    const double v = sphere_average(rule, [&](const Vec& y) { return std::pow(y[0] - c[0], 2); }, c, 1.0);
    EXPECT_NEAR(v, oracle, 1e-13);
    EXPECT_NEAR(v, 0.5, 1e-14);
}

TEST(SphereAverage, LinearIsExactlyZero) {
    const SphereRule rule = uniform_sphere_rule(3, 12);
    const Vec c = point(0.1, 0.2, 0.3);
    const double v =
        sphere_average(rule, [&](const Vec& y) { return 0.7 * (y[0] - c[0]) - 1.3 * (y[2] - c[2]); }, c, 0.01);
    EXPECT_EQ(v, 0.0);
}

TEST(BallAverage, Examples) {
    const BallRule b2 = make_ball_rule(8, uniform_sphere_rule(2, 32));
    const BallRule b3 = make_ball_rule(8, uniform_sphere_rule(3, 16));
    const Vec c2 = point(1, 1), c3 = point(0, 0, 1);
    EXPECT_NEAR(ball_average(b2, [](const Vec&) { return -4.0; }, c2, 0.3), -4.0, 1e-14);
    EXPECT_NEAR(ball_average(b2, [&](const Vec& y) { return (y - c2).squaredNorm(); }, c2, 1.0), 0.5, 1e-14);
    // r^2 / (d + 2): radial moment 3 int rho^4 = 3/5 times the sphere moment 1/3
    boost::math::quadrature::tanh_sinh<double> ts;
    const double radial = 3.0 * ts.integrate([](double t) { return std::pow(t, 4); }, 0.0, 1.0);
    EXPECT_NEAR(ball_average(b3, [&](const Vec& y) { return std::pow(y[0] - c3[0], 2); }, c3, 2.0),
                4.0 * radial / 3.0, 1e-13);
    EXPECT_NEAR(ball_average(b3, [&](const Vec& y) { return std::pow(y[0] - c3[0], 2); }, c3, 2.0), 0.8, 1e-13);
}

TEST(Quadrature, RejectsNonFiniteSamples) {
    const SphereRule rule = uniform_sphere_rule(2, 8);
    EXPECT_THROW(sphere_average(rule, [](const Vec&) { return NAN; }, point(0, 0), 1.0), NonFiniteIntegrand);
}

TEST(MonteCarlo, Examples) {
    const MonteCarloEstimate one = mc_average(2, Region::Sphere, [](const Vec&) { return 1.0; }, point(0, 0), 1, 1000, 3);
    EXPECT_EQ(one.mean, 1.0);
    EXPECT_EQ(one.standard_error, 0.0);
    const MonteCarloEstimate s2 =
        mc_average(2, Region::Sphere, [](const Vec& y) { return y[0] * y[0]; }, point(0, 0), 1, 1000000, 7);
    EXPECT_NEAR(s2.mean, 0.5, 3 * s2.standard_error);
    Vec c5 = Vec::Zero(5);
    const MonteCarloEstimate s5 =
        mc_average(5, Region::Sphere, [](const Vec& y) { return y[0] * y[0]; }, c5, 1, 1000000, 11);
    EXPECT_NEAR(s5.mean, 0.2, 3 * s5.standard_error);
    const MonteCarloEstimate b2 =
        mc_average(2, Region::Ball, [](const Vec& y) { return y.squaredNorm(); }, point(0, 0), 1, 400000, 13);
    EXPECT_NEAR(b2.mean, 0.5, 4 * b2.standard_error);
}

TEST(GradedIntegral, SquareRootKink) {
    // int_{-1}^{2} |x|^{-1/2} dx = 2 (1 + sqrt 2)
    const double bp[] = {0.0};
    const double v = graded_integral([](double x) { return 1.0 / std::sqrt(std::fabs(x)); }, -1.0, 2.0, bp,
                                     GradingOptions{16, 0.15, 1e-20});
    EXPECT_NEAR(v, 2 * (1 + std::sqrt(2.0)), 1e-9);
    // a kink away from zero is resolved down to the spacing of doubles around it
    const double kink[] = {0.3};
    const double w = graded_integral([](double x) { return std::sqrt(std::fabs(x - 0.3)); }, -1.0, 2.0, kink,
                                     GradingOptions{16, 0.15, 1e-15});
    EXPECT_NEAR(w, (2.0 / 3.0) * (std::pow(1.3, 1.5) + std::pow(1.7, 1.5)), 1e-12);
}

TEST(KinkAwareCircle, AbsoluteCosine) {
    // (1/2 pi) int |cos(t - 0.4)|^{0.5} dt = Gamma(3/4) / (sqrt(pi) Gamma(5/4))
    const double oracle = std::tgamma(0.75) / (std::sqrt(std::numbers::pi) * std::tgamma(1.25));
    const Vec dir = point(std::cos(0.4), std::sin(0.4));
    const double v = kink_aware_circle_average([&](const Vec& y) { return std::sqrt(std::fabs(y.dot(dir))); },
                                               [&](const Vec& y) { return y.dot(dir); }, 1024,
                                               GradingOptions{16, 0.15, 1e-20});
    EXPECT_NEAR(v, oracle, 1e-12);
}

TEST(BracketedRoots, FindsAllSignChanges) {
    const auto roots = bracketed_roots([](double t) { return std::cos(3 * t); }, 0.0, std::numbers::pi, 200);
    ASSERT_EQ(roots.size(), 3u);
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(roots[k], std::numbers::pi * (2 * k + 1) / 6, 1e-12);
}

TEST(AdaptiveAverage, DoublingIsStable) {
    const auto g = [](const Vec& y) { return std::exp(y[0]) * std::cos(y[1]); };
    const AdaptiveResult a = adaptive_unit_sphere_average(3, g, {1e-12, 8, 1 << 18});
    ASSERT_TRUE(a.converged);
    ASSERT_GE(a.history.size(), 2u);
    EXPECT_LT(std::fabs(a.history.back() - a.history[a.history.size() - 2]), 1e-12);
    const MonteCarloEstimate mc = mc_average(3, Region::Sphere, g, point(0, 0, 0), 1, 400000, 5);
    EXPECT_NEAR(a.value, mc.mean, 4 * mc.standard_error);
}

}  // namespace
