#pragma once

#include <complex>
#include <vector>

#include "pmvf/core.hpp"
#include "pmvf/quadrature.hpp"

namespace pmvf {

/// lambda_k^{(n)} = (1/2)(-n p + sqrt(4 k^2 (p-1) + n^2 (p-2)^2)).
double lambda_kn(int n, int k, const PExponent& p);

/// gamma = 1 + lambda_{n+2} / lambda_{n+1}^2.
double gamma_exponent(int n, const PExponent& p);

/// 1/eta_n = (1/2)(-p + sqrt(4 (1 + 1/n)^2 (p-1) + (p-2)^2)).
double inverse_eta(int n, const PExponent& p);

struct ExponentTable {
    int n = 0;
    double p = 0.0;
    double lambda_n1 = 0.0;
    double lambda_n2 = 0.0;
    double gamma = 0.0;
    double threshold = 0.0;  // p/(p-1)
    bool holds = false;      // gamma > p/(p-1)
    double inverse_eta = 0.0;
};

ExponentTable exponent_table(int n, const PExponent& p);

/// Root in (lo, hi) of (p-1) lambda_{n+2}/lambda_{n+1}^2 - 1, by bisection.
double find_p0(int n, double lo = 1.0, double hi = 2.0, double tol = 1e-8);

struct HodographParams {
    int n = 1;
    double C = 1.0;
    double alpha = 1.0;
    double beta = 1.0;
    double epsilon = 0.0;

    /// Throws InvalidArgument unless n >= 1, C > 0, beta > 0 and |epsilon| < 1/(2n+1).
    void validate() const;
};

struct HodographPoint {
    std::complex<double> image;
    double modulus = 0.0;   // r^beta m(theta)
    double jacobian = 0.0;  // beta r^{2(beta-1)} j(theta)
};

/// A(r e^{i theta}) = r^beta (e^{i theta} + epsilon e^{-i(2n+1) theta}).
HodographPoint hodograph_map(const HodographParams& params, double r, double theta);

/// m(theta) and j(theta) of the hodograph map.
double hodograph_modulus_factor(const HodographParams& params, double theta);
double hodograph_jacobian_factor(const HodographParams& params, double theta);

struct HodographIntegral {
    double value = 0.0;  // integral over B_R of J_p(A-frak)
    double scale = 0.0;  // integral over B_R of |J_p(A-frak)|
    std::vector<double> history;  // value for successive angular refinements
};

/// Integral of J_p(A-frak) over B_R, computed on the preimage {r^beta < R/m(theta)} with the
/// radial integral in closed form. Requires alpha (p-1) + 2 beta > 0.
HodographIntegral mvf_of_A(const HodographParams& params, const PExponent& p, double R,
                           int refinements = 2);

struct PolarPoint {
    double r = 0.0;
    double theta = 0.0;  // in [0, 2 pi)
    int iterations = 0;
};

/// Damped Newton for A(r, theta) = w from r = |w|^{1/beta}, theta = arg w.
PolarPoint invert_A(const HodographParams& params, std::complex<double> w, double newton_tol = 1e-12);

}  // namespace pmvf
