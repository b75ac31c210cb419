#include "pmvf/appendix.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace pmvf {

namespace {

constexpr double kPi = std::numbers::pi;

template <class Ratio>
double sup_over_samples(std::size_t samples, std::uint64_t seed, Ratio&& ratio) {
    if (samples < 1) throw InvalidArgument("need at least one sample");
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> expo(-3.0, 3.0);
    std::bernoulli_distribution sign(0.5);
    double sup = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        double a = std::pow(10.0, expo(gen)), b = std::pow(10.0, expo(gen));
        if (sign(gen)) a = -a;
        if (sign(gen)) b = -b;
        const double v = ratio(a, b);
        if (!std::isfinite(v)) throw NonFiniteIntegrand("lemma ratio is not finite");
        sup = std::max(sup, v);
    }
    return sup;
}

SupStability stability(std::size_t samples, std::uint64_t seed,
                       const std::function<double(std::size_t, std::uint64_t)>& sup) {
    SupStability out;
    out.samples = samples;
    out.sup_ratio = sup(samples, seed);
    out.doubled = sup(2 * samples, seed);
    out.reseeded = sup(samples, seed ^ 0x9e3779b97f4a7c15ULL);
    auto close = [&](double v) { return std::fabs(v - out.sup_ratio) <= 0.1 * out.sup_ratio; };
    out.stable = std::isfinite(out.sup_ratio) && close(out.doubled) && close(out.reseeded);
    return out;
}

double quad_form(const Mat& L, const Vec& w) { return w.dot(L * w); }

double checked_power(double base, double s) {
    const double v = std::pow(std::fabs(base), -s);
    if (!std::isfinite(v)) throw NonFiniteIntegrand("lemma A.3 base vanishes away from its located zeros");
    return v;
}

// int over [t0, t0 + dir * len] of |b(t)|^{-s} dt, where t0 is a simple zero of b.
// With t = t0 + dir * v^{1/(1-s)} the integrand becomes |b(t)/(t - t0)|^{-s} / (1 - s), which is smooth.
double zero_adjacent_integral(const std::function<double(double)>& b, double t0, double dir, double len, double s,
                              const GradingOptions& opt) {
    const double delta = 1e-5 * len;
    const double bp = b(t0 + delta), bm = b(t0 - delta), b0 = b(t0);
    const double slope = (bp - bm) / (2.0 * delta), curve = (bp - 2.0 * b0 + bm) / (2.0 * delta * delta);
    const double alpha = 1.0 / (1.0 - s);
    auto g = [&](double v) {
        const double d = dir * std::pow(v, alpha);
        const double ratio = std::fabs(d) < delta ? slope + curve * d : b(t0 + d) / d;
        return checked_power(ratio, s) * alpha;
    };
    return graded_integral(g, 0.0, std::pow(len, 1.0 - s), {}, opt);
}

// int_a^b |base(t)|^{-s} dt for a base whose zeros in [a, b] are simple and listed in `zeros`.
double singular_line_integral(const std::function<double(double)>& base, double a, double b,
                              const std::vector<double>& zeros, double s, const GradingOptions& opt) {
    std::vector<double> pts{a};
    std::vector<bool> is_zero{false};
    for (double z : zeros) {
        if (z <= pts.back() || z >= b) continue;
        pts.push_back(z);
        is_zero.push_back(true);
    }
    pts.push_back(b);
    is_zero.push_back(false);
    if (!zeros.empty() && zeros.front() == a) is_zero.front() = true;
    if (!zeros.empty() && zeros.back() == b) is_zero.back() = true;

    CompensatedSum sum;
    auto plain = [&](double lo, double hi) {
        sum.add(graded_integral([&](double t) { return checked_power(base(t), s); }, lo, hi, {}, opt));
    };
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double lo = pts[i], hi = pts[i + 1];
        const bool zl = is_zero[i], zr = is_zero[i + 1];
        if (zl && zr) {
            const double mid = 0.5 * (lo + hi);
            sum.add(zero_adjacent_integral(base, lo, 1.0, mid - lo, s, opt));
            sum.add(zero_adjacent_integral(base, hi, -1.0, hi - mid, s, opt));
        } else if (zl) {
            sum.add(zero_adjacent_integral(base, lo, 1.0, hi - lo, s, opt));
        } else if (zr) {
            sum.add(zero_adjacent_integral(base, hi, -1.0, hi - lo, s, opt));
        } else {
            plain(lo, hi);
        }
    }
    return sum.value();
}

}  // namespace

double lemma_a1_ratio(const PExponent& p, double eps, double a, double b) {
    if (b == 0.0) return 0.0;
    const double lhs = std::fabs(jp(p, a + b) - jp(p, a) - p.minus_one() * std::pow(std::fabs(a), p.value() - 2.0) * b);
    const double m = std::max(std::fabs(a), std::fabs(a + b));
    return lhs / (std::pow(m, p.value() - 2.0 - eps) * std::pow(std::fabs(b), 1.0 + eps));
}

double lemma_a2_ratio(const PExponent& p, double a, double b) {
    if (b == 0.0) return 0.0;
    const double lhs = std::fabs(jp(p, a + b) - jp(p, a));
    return lhs / (std::pow(std::fabs(a) + std::fabs(b), p.value() - 2.0) * std::fabs(b));
}

double lemma_a1_sup(const PExponent& p, double eps, std::size_t samples, std::uint64_t seed) {
    return sup_over_samples(samples, seed, [&](double a, double b) { return lemma_a1_ratio(p, eps, a, b); });
}

double lemma_a2_sup(const PExponent& p, std::size_t samples, std::uint64_t seed) {
    return sup_over_samples(samples, seed, [&](double a, double b) { return lemma_a2_ratio(p, a, b); });
}

SupStability check_lemma_a1(const PExponent& p, double eps, std::size_t samples, std::uint64_t seed) {
    const double pv = p.value();
    if (pv < 2.0) throw InvalidArgument("lemma A.1 needs p >= 2");
    const bool ok = pv == 2.0 ? eps == 0.0 : (eps >= 0.0 && eps < pv - 2.0);
    if (!ok) throw InvalidArgument("lemma A.1 needs eps in [0, p-2)");
    return stability(samples, seed, [&](std::size_t n, std::uint64_t s) { return lemma_a1_sup(p, eps, n, s); });
}

SupStability check_lemma_a2(const PExponent& p, std::size_t samples, std::uint64_t seed) {
    if (!(p.value() < 2.0)) throw InvalidArgument("lemma A.2 needs 1 < p < 2");
    return stability(samples, seed, [&](std::size_t n, std::uint64_t s) { return lemma_a2_sup(p, n, s); });
}

double lemma_a3_integral(const Mat& L, double s, int level) {
    const int dim = static_cast<int>(L.rows());
    if (L.cols() != dim || dim < 2 || dim > 3) throw InvalidArgument("lemma A.3 needs a square form with d in {2,3}");
    if (!(s > 0.0 && s < 1.0)) throw InvalidArgument("lemma A.3 needs s in (0,1)");
    if (level < 0) throw InvalidArgument("refinement level must be >= 0");
    GradingOptions opt;
    opt.order = 12 << level;
    if (dim == 2) {
        Vec w(2);
        auto base = [&](double t) {
            w << std::cos(t), std::sin(t);
            return w[0] + quad_form(L, w);
        };
        std::vector<double> zeros = bracketed_roots(base, 0.0, 2.0 * kPi, 2048);
        if (zeros.empty()) return singular_line_integral(base, 0.0, 2.0 * kPi, {}, s, opt) / (2.0 * kPi);
        // start the period at a zero so that both ends are zeros
        const double t0 = zeros.front();
        for (double& z : zeros) z -= t0;
        zeros.push_back(2.0 * kPi);
        auto shifted = [&](double t) { return base(t + t0); };
        return singular_line_integral(shifted, 0.0, 2.0 * kPi, zeros, s, opt) / (2.0 * kPi);
    }
    // d = 3: w = (u, sqrt(1-u^2) cos phi, sqrt(1-u^2) sin phi), dsigma = du dphi / (4 pi).
    const int azimuths = 64 << level;
    Vec w(3);
    CompensatedSum outer;
    for (int k = 0; k < azimuths; ++k) {
        const double phi = 2.0 * kPi * (k + 0.5) / azimuths;
        const double c = std::cos(phi), sn = std::sin(phi);
        auto base = [&](double u) {
            const double rho = std::sqrt(std::max(0.0, 1.0 - u * u));
            w << u, rho * c, rho * sn;
            return u + quad_form(L, w);
        };
        outer.add(singular_line_integral(base, -1.0, 1.0, bracketed_roots(base, -1.0, 1.0, 512), s, opt));
    }
    return outer.value() / (2.0 * azimuths);
}

LemmaA3Result check_lemma_a3(int dim, double s, int forms, std::uint64_t seed, double stability_tol) {
    if (dim < 2 || dim > 3) throw InvalidArgument("lemma A.3 check supports d in {2,3}");
    if (forms < 1) throw InvalidArgument("need at least one quadratic form");
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> shrink(0.05, 0.999);
    const double bound = 1.0 / (dim * dim + 1.0);

    LemmaA3Result out;
    out.forms = forms;
    for (int f = 0; f < forms; ++f) {
        Mat L = Mat::Zero(dim, dim);
        if (f > 0) {
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j <= i; ++j) L(i, j) = L(j, i) = normal(gen);
            const double radius = Eigen::SelfAdjointEigenSolver<Mat>(L).eigenvalues().cwiseAbs().maxCoeff();
            L *= shrink(gen) * bound / radius;
        }
        const double v0 = lemma_a3_integral(L, s, 0);
        const double v1 = lemma_a3_integral(L, s, 1);
        const double rel = std::fabs(v1 - v0) / std::fabs(v1);
        if (!std::isfinite(v0) || !std::isfinite(v1) || rel > stability_tol)
            throw NonFiniteIntegrand("lemma A.3 integral did not stabilize under refinement");
        if (f == 0) out.zero_form_value = v1;
        out.sup_integral = std::max(out.sup_integral, v0);
        out.sup_refined = std::max(out.sup_refined, v1);
        out.max_relative_change = std::max(out.max_relative_change, rel);
    }
    out.stable = out.max_relative_change <= stability_tol;
    return out;
}

}  // namespace pmvf
