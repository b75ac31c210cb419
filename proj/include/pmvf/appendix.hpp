#pragma once

#include <cstdint>

#include "pmvf/core.hpp"
#include "pmvf/quadrature.hpp"

namespace pmvf {

/// |J_p(a+b) - J_p(a) - (p-1)|a|^{p-2} b| / (max(|a|,|a+b|)^{p-2-eps} |b|^{1+eps}); 0 when b = 0.
double lemma_a1_ratio(const PExponent& p, double eps, double a, double b);

/// |J_p(a+b) - J_p(a)| / ((|a|+|b|)^{p-2} |b|); 0 when b = 0.
double lemma_a2_ratio(const PExponent& p, double a, double b);

/// Empirical supremum of a ratio over (a, b) with log-uniform magnitudes in [1e-3, 1e3]
/// and random signs.
double lemma_a1_sup(const PExponent& p, double eps, std::size_t samples, std::uint64_t seed);
double lemma_a2_sup(const PExponent& p, std::size_t samples, std::uint64_t seed);

struct SupStability {
    double sup_ratio = 0.0;
    double doubled = 0.0;   // same seed, twice the samples
    double reseeded = 0.0;  // other seed, same samples
    std::size_t samples = 0;
    bool stable = false;    // both within 10% of sup_ratio
};

/// p >= 2, eps in [0, p-2); eps = 0 is also accepted at p = 2.
SupStability check_lemma_a1(const PExponent& p, double eps, std::size_t samples, std::uint64_t seed);
/// 1 < p < 2.
SupStability check_lemma_a2(const PExponent& p, std::size_t samples, std::uint64_t seed);

/// avg over the unit sphere of |e_1 . w + w^T L w|^{-s}, resolving the zero set of the base.
/// `level` doubles the Gauss order per panel (and the azimuth count for d = 3).
double lemma_a3_integral(const Mat& L, double s, int level = 0);

struct LemmaA3Result {
    double sup_integral = 0.0;
    double sup_refined = 0.0;
    double max_relative_change = 0.0;  // over forms, between level 0 and level 1
    double zero_form_value = 0.0;      // the L = 0 reference
    int forms = 0;
    bool stable = false;
};

/// Random symmetric forms scaled to spectral radius in (0, 1/(d^2+1)), the zero form included.
/// Throws NonFiniteIntegrand if a form's integral is not stable under refinement.
LemmaA3Result check_lemma_a3(int dim, double s, int forms, std::uint64_t seed, double stability_tol = 1e-6);

}  // namespace pmvf
