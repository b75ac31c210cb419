#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "pmvf/appendix.hpp"

namespace {

using namespace pmvf;

TEST(LemmaA1, TrivialCases) {
    EXPECT_EQ(lemma_a1_ratio(PExponent(3), 0.5, 1.7, 0.0), 0.0);
    EXPECT_NEAR(lemma_a1_ratio(PExponent(2), 0.0, 1.7, -0.4), 0.0, 1e-15);
}

TEST(LemmaA1, RatioFormula) {
    const PExponent p(3);
    const double a = -0.8, b = 1.9, eps = 0.4;
    const double lhs = std::fabs(jp(p, a + b) - jp(p, a) - 2.0 * std::fabs(a) * b);
    const double rhs = std::pow(std::max(std::fabs(a), std::fabs(a + b)), 1.0 - eps) * std::pow(std::fabs(b), 1.0 + eps);
    EXPECT_NEAR(lemma_a1_ratio(p, eps, a, b), lhs / rhs, 1e-14);
}

TEST(LemmaA1, SupIsStable) {
    const SupStability s = check_lemma_a1(PExponent(3), 0.0, 100000, 1);
    EXPECT_TRUE(s.stable);
    EXPECT_TRUE(std::isfinite(s.sup_ratio));
    EXPECT_NEAR(s.doubled, s.sup_ratio, 0.1 * s.sup_ratio);
    EXPECT_TRUE(check_lemma_a1(PExponent(4), 0.7, 50000, 2).stable);
    EXPECT_THROW(check_lemma_a1(PExponent(3), 1.0, 100, 1), InvalidArgument);
    EXPECT_THROW(check_lemma_a1(PExponent(1.5), 0.0, 100, 1), InvalidArgument);
}

TEST(LemmaA2, TrivialCases) {
    const PExponent p(1.5);
    EXPECT_EQ(lemma_a2_ratio(p, 0.3, 0.0), 0.0);
    EXPECT_NEAR(lemma_a2_ratio(p, 0.0, 2.7), 1.0, 1e-15);
    EXPECT_NEAR(lemma_a2_ratio(p, 0.0, -0.02), 1.0, 1e-15);
}

TEST(LemmaA2, SupIsStable) {
    const SupStability s = check_lemma_a2(PExponent(1.5), 100000, 4);
    EXPECT_TRUE(s.stable);
    EXPECT_GE(s.sup_ratio, 1.0);
    EXPECT_THROW(check_lemma_a2(PExponent(2.5), 100, 1), InvalidArgument);
}

TEST(LemmaA3, ZeroFormMatchesGammaOracles) {
    // (1/2 pi) int |cos t|^{-s} dt = Gamma((1-s)/2) / (sqrt(pi) Gamma(1 - s/2))
    for (double s : {0.25, 0.5, 0.8}) {
        const double d2 = std::tgamma((1 - s) / 2) / (std::sqrt(std::numbers::pi) * std::tgamma(1 - s / 2));
        EXPECT_NEAR(lemma_a3_integral(Mat::Zero(2, 2), s), d2, 1e-10 * d2) << s;
        // on S^2 the first coordinate is uniform on [-1, 1]
        EXPECT_NEAR(lemma_a3_integral(Mat::Zero(3, 3), s), 1.0 / (1.0 - s), 1e-10 / (1.0 - s)) << s;
    }
}

TEST(LemmaA3, SmallExponentTendsToOne) {
    Mat L(2, 2);
    L << 0.05, 0.02, 0.02, -0.03;
    EXPECT_NEAR(lemma_a3_integral(L, 1e-6), 1.0, 1e-5);
}

TEST(LemmaA3, RandomFormsAreFiniteAndStable) {
    for (int d : {2, 3}) {
        const LemmaA3Result r = check_lemma_a3(d, 0.5, 6, 7);
        EXPECT_TRUE(r.stable);
        EXPECT_TRUE(std::isfinite(r.sup_integral));
        EXPECT_LT(r.max_relative_change, 1e-10);
        EXPECT_LT(r.sup_integral, 3.0 * r.zero_form_value);
        EXPECT_EQ(r.forms, 6);
    }
}

TEST(LemmaA3, ScaledDiagonalForm) {
    for (int d : {2, 3}) {
        const Mat L = Mat::Identity(d, d) / (d * d + 2.0);
        const double v = lemma_a3_integral(L, 0.5), z = lemma_a3_integral(Mat::Zero(d, d), 0.5);
        EXPECT_TRUE(std::isfinite(v));
        EXPECT_LT(v, 3.0 * z);
        EXPECT_NEAR(lemma_a3_integral(L, 0.5, 1), v, 1e-6 * v);
    }
}

}  // namespace
