#pragma once

#include "pmvf/core.hpp"

namespace pmvf {

/// C_{d,p} = (1/2) avg_{S^{d-1}} |y_1|^p and D_{d,p} = d C_{d,p} / (p + d).
struct NormalizationConstants {
    int dim = 0;
    double p = 0.0;
    double C = 0.0;
    double D = 0.0;
};

NormalizationConstants compute_constants(int dim, const PExponent& p);

/// Memoized compute_constants; safe to call concurrently.
NormalizationConstants cached_constants(int dim, const PExponent& p);

/// Exponents below this make |y_1|^{p-2} too singular for the identity check.
inline constexpr double kIbpMinExponent = 1.1;

struct IbpCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
    bool skipped = false;  // p < kIbpMinExponent
};

/// Compares (1/2) avg |y_1|^p with (1/2)(p-1) avg |y_1|^{p-2} y_i^2 on the unit sphere,
/// each side evaluated on its own. Requires d >= 2 and 2 <= i <= d (1-based).
IbpCheck check_ibp_identity(int dim, const PExponent& p, int i);

}  // namespace pmvf
