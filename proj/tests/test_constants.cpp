#include <gtest/gtest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>

#include "pmvf/constants.hpp"
#include "pmvf/quadrature.hpp"

namespace {

using namespace pmvf;

// (1/2)(1/2 pi) int |cos t|^p dt on a 1D rule
double cosine_oracle(double p) {
    boost::math::quadrature::tanh_sinh<double> ts;
    const double half = ts.integrate([p](double t) { return std::pow(std::cos(t), p); }, 0.0, std::numbers::pi / 2);
    return 0.5 * 4.0 * half / (2 * std::numbers::pi);
}

double gamma_oracle(int d, double p) {
    return 0.5 * std::tgamma((p + 1) / 2) * std::tgamma(d / 2.0) / (std::sqrt(std::numbers::pi) * std::tgamma((p + d) / 2));
}

TEST(Constants, Examples) {
    EXPECT_EQ(compute_constants(1, PExponent(2.7)).C, 0.5);
    EXPECT_NEAR(compute_constants(3, PExponent(2)).C, 1.0 / 6.0, 1e-12);
    EXPECT_NEAR(compute_constants(2, PExponent(2)).C, 0.25, 1e-12);
    const NormalizationConstants k = compute_constants(2, PExponent(4));
    EXPECT_NEAR(k.C, 0.1875, 1e-10);
    EXPECT_NEAR(k.D, 0.0625, 1e-10);
}

TEST(Constants, MatchOneDimensionalOracles) {
    for (double pv : {1.1, 1.5, 2.0, 3.0, 4.0, 7.5}) {
        const PExponent p(pv);
        EXPECT_NEAR(compute_constants(2, p).C, cosine_oracle(pv), 1e-12) << pv;
        // on S^2 the first coordinate is uniform on [-1, 1]
        EXPECT_NEAR(compute_constants(3, p).C, 0.5 / (pv + 1), 1e-12) << pv;
        for (int d : {2, 3}) {
            const NormalizationConstants k = compute_constants(d, p);
            EXPECT_NEAR(k.C, gamma_oracle(d, pv), 1e-12);
            EXPECT_NEAR(k.D, d * k.C / (pv + d), 1e-15);
        }
    }
}

TEST(Constants, AgreeWithMonteCarlo) {
    for (int d : {2, 3})
        for (double pv : {1.5, 2.0, 3.0, 4.0}) {
            const NormalizationConstants k = compute_constants(d, PExponent(pv));
            const MonteCarloEstimate mc = mc_average(
                d, Region::Sphere, [pv](const Vec& y) { return 0.5 * std::pow(std::fabs(y[0]), pv); },
                Vec::Zero(d), 1.0, 200000, 17 + d);
            EXPECT_NEAR(k.C, mc.mean, 4 * mc.standard_error) << d << ' ' << pv;
        }
}

TEST(Constants, CacheReturnsSameValues) {
    const NormalizationConstants a = compute_constants(3, PExponent(2.3));
    const NormalizationConstants b = cached_constants(3, PExponent(2.3));
    EXPECT_EQ(a.C, b.C);
    EXPECT_EQ(a.D, b.D);
}

TEST(Constants, RejectUnsupportedDimension) {
    EXPECT_THROW(compute_constants(0, PExponent(2)), InvalidArgument);
    EXPECT_THROW(compute_constants(4, PExponent(2)), InvalidArgument);
}

TEST(IbpIdentity, Examples) {
    EXPECT_LT(check_ibp_identity(2, PExponent(2), 2).residual, 1e-12);
    EXPECT_LT(check_ibp_identity(3, PExponent(3), 2).residual, 1e-8);
    EXPECT_LT(check_ibp_identity(2, PExponent(1.5), 2).residual, 1e-6);
    EXPECT_NEAR(check_ibp_identity(2, PExponent(2), 2).lhs, 0.25, 1e-12);
}

TEST(IbpIdentity, MonteCarloRightHandSide) {
    const PExponent p(3);
    const IbpCheck c = check_ibp_identity(3, p, 3);
    const MonteCarloEstimate mc = mc_average(
        3, Region::Sphere, [](const Vec& y) { return 0.5 * 2.0 * std::fabs(y[0]) * y[2] * y[2]; }, Vec::Zero(3), 1.0,
        400000, 23);
    EXPECT_NEAR(c.rhs, mc.mean, 4 * mc.standard_error);
}

TEST(IbpIdentity, RejectsBadIndex) {
    EXPECT_THROW(check_ibp_identity(2, PExponent(3), 1), InvalidArgument);
    EXPECT_THROW(check_ibp_identity(2, PExponent(3), 3), InvalidArgument);
}

}  // namespace
