#include "pmvf/plane.hpp"

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <numbers>

namespace pmvf {

namespace {

constexpr double kPi = std::numbers::pi;

void require_index(int n, int k) {
    if (n < 1 || k < 1) throw InvalidArgument("exponent indices need n >= 1 and k >= 1");
}

// lambda_k^{(n)} / (p - 1), free of the cancellation in -n p + sqrt(...).
double lambda_over_pm1(int n, int k, const PExponent& p) {
    const double pv = p.value();
    const double x = 4.0 * k * k * p.minus_one() + n * n * (pv - 2.0) * (pv - 2.0);
    return 2.0 * (static_cast<double>(k) * k - static_cast<double>(n) * n) / (std::sqrt(x) + n * pv);
}

double normalize_angle(double t) {
    t = std::fmod(t, 2.0 * kPi);
    if (t < 0.0) t += 2.0 * kPi;
    return t;
}

}  // namespace

double lambda_kn(int n, int k, const PExponent& p) {
    require_index(n, k);
    return p.minus_one() * lambda_over_pm1(n, k, p);
}

double gamma_exponent(int n, const PExponent& p) {
    const double l1 = lambda_kn(n, n + 1, p);
    return 1.0 + lambda_kn(n, n + 2, p) / (l1 * l1);
}

double inverse_eta(int n, const PExponent& p) {
    require_index(n, 1);
    const double pv = p.value();
    const double a = 1.0 + 1.0 / n;
    return 0.5 * (-pv + std::sqrt(4.0 * a * a * p.minus_one() + (pv - 2.0) * (pv - 2.0)));
}

ExponentTable exponent_table(int n, const PExponent& p) {
    ExponentTable t;
    t.n = n;
    t.p = p.value();
    t.lambda_n1 = lambda_kn(n, n + 1, p);
    t.lambda_n2 = lambda_kn(n, n + 2, p);
    t.gamma = 1.0 + t.lambda_n2 / (t.lambda_n1 * t.lambda_n1);
    t.threshold = p.conjugate();
    t.holds = t.gamma > t.threshold;
    t.inverse_eta = inverse_eta(n, p);
    return t;
}

double find_p0(int n, double lo, double hi, double tol) {
    require_index(n, 1);
    if (!(lo >= 1.0) || !(hi > lo) || !std::isfinite(hi) || !(tol > 0.0))
        throw InvalidArgument("find_p0 needs 1 <= lo < hi and tol > 0");
    auto F = [n](double pv) {
        const double q = pv > 1.0 ? pv : std::nextafter(1.0, 2.0);
        const PExponent p(q);
        const double a = lambda_over_pm1(n, n + 1, p);
        return lambda_over_pm1(n, n + 2, p) / (a * a) - 1.0;
    };
    const double flo = F(lo), fhi = F(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo < 0.0) == (fhi < 0.0)) throw NoSignChange("find_p0: no sign change in the bracket");
    auto done = [tol](double a, double b) { return b - a <= tol; };
    const auto [a, b] = boost::math::tools::bisect(F, lo, hi, done);
    return 0.5 * (a + b);
}

void HodographParams::validate() const {
    if (n < 1) throw InvalidArgument("hodograph n must be >= 1");
    if (!(C > 0.0) || !std::isfinite(C)) throw InvalidArgument("hodograph C must be positive");
    if (!(beta > 0.0) || !std::isfinite(beta)) throw InvalidArgument("hodograph beta must be positive");
    if (!std::isfinite(alpha)) throw InvalidArgument("hodograph alpha must be finite");
    if (!(std::fabs(epsilon) < 1.0 / (2 * n + 1))) throw InvalidArgument("hodograph needs |epsilon| < 1/(2n+1)");
}

double hodograph_modulus_factor(const HodographParams& prm, double theta) {
    const double e = prm.epsilon;
    return std::sqrt(1.0 + e * e + 2.0 * e * std::cos(2.0 * (prm.n + 1) * theta));
}

double hodograph_jacobian_factor(const HodographParams& prm, double theta) {
    const double e = prm.epsilon;
    return 1.0 - (2 * prm.n + 1) * e * e - 2.0 * prm.n * e * std::cos(2.0 * (prm.n + 1) * theta);
}

HodographPoint hodograph_map(const HodographParams& prm, double r, double theta) {
    prm.validate();
    if (!(r > 0.0)) throw InvalidArgument("hodograph radius must be positive");
    const double rb = std::pow(r, prm.beta);
    HodographPoint out;
    out.image = rb * (std::polar(1.0, theta) + prm.epsilon * std::polar(1.0, -(2.0 * prm.n + 1.0) * theta));
    out.modulus = rb * hodograph_modulus_factor(prm, theta);
    out.jacobian = prm.beta * std::pow(r, 2.0 * (prm.beta - 1.0)) * hodograph_jacobian_factor(prm, theta);
    return out;
}

HodographIntegral mvf_of_A(const HodographParams& prm, const PExponent& p, double R, int refinements) {
    prm.validate();
    if (!(R > 0.0)) throw InvalidArgument("mvf_of_A needs R > 0");
    if (refinements < 1) throw InvalidArgument("mvf_of_A needs at least one refinement level");
    const double s = prm.alpha * p.minus_one() + 2.0 * prm.beta;
    if (!(s > 0.0)) throw InvalidArgument("mvf_of_A needs alpha (p-1) + 2 beta > 0");
    const int k = prm.n + 1;
    const double prefactor = std::pow(prm.C, p.minus_one()) * prm.beta / s;

    // zeros of cos(k theta) in (0, 2 pi)
    std::vector<double> zeros;
    for (int j = 0; j < 2 * k; ++j) zeros.push_back((0.5 + j) * kPi / k);

    auto radial = [&](double theta) {
        const double rt = std::pow(R / hodograph_modulus_factor(prm, theta), 1.0 / prm.beta);
        return hodograph_jacobian_factor(prm, theta) * std::pow(rt, s);
    };
    HodographIntegral out;
    GradingOptions opt;
    opt.order = 12;
    for (int level = 0; level < refinements; ++level) {
        const double v = graded_integral(
            [&](double t) { return jp(p, std::cos(k * t)) * radial(t); }, 0.0, 2.0 * kPi, zeros, opt);
        out.history.push_back(prefactor * v);
        opt.order *= 2;
    }
    out.value = out.history.back();
    opt.order /= 2;
    out.scale = prefactor * graded_integral(
                                [&](double t) { return std::fabs(jp(p, std::cos(k * t))) * radial(t); }, 0.0,
                                2.0 * kPi, zeros, opt);
    return out;
}

PolarPoint invert_A(const HodographParams& prm, std::complex<double> w, double newton_tol) {
    prm.validate();
    if (w == 0.0) throw InvalidArgument("invert_A needs w != 0");
    if (!(newton_tol > 0.0)) throw InvalidArgument("newton tolerance must be positive");
    const double m = 2.0 * prm.n + 1.0;
    auto image = [&](double r, double t) {
        return std::pow(r, prm.beta) * (std::polar(1.0, t) + prm.epsilon * std::polar(1.0, -m * t));
    };
    double r = std::pow(std::abs(w), 1.0 / prm.beta);
    double t = std::arg(w);
    std::complex<double> res = image(r, t) - w;
    PolarPoint out;
    for (int it = 0; it <= 100; ++it) {
        if (std::abs(res) <= newton_tol) {
            out.r = r;
            out.theta = normalize_angle(t);
            out.iterations = it;
            return out;
        }
        const std::complex<double> a = image(r, t);
        const std::complex<double> dr = prm.beta / r * a;
        const std::complex<double> dt =
            std::pow(r, prm.beta) *
            (std::complex<double>(0.0, 1.0) * (std::polar(1.0, t) - m * prm.epsilon * std::polar(1.0, -m * t)));
        // Solve [dr dt] [x y]^T = -res as a real 2x2 system.
        const double det = dr.real() * dt.imag() - dt.real() * dr.imag();
        if (det == 0.0 || !std::isfinite(det)) break;
        const double x = (-res.real() * dt.imag() + dt.real() * res.imag()) / det;
        const double y = (-dr.real() * res.imag() + dr.imag() * res.real()) / det;
        double lambda = 1.0;
        bool improved = false;
        for (int half = 0; half < 40; ++half) {
            const double rn = r + lambda * x;
            if (rn > 0.0) {
                const std::complex<double> rr = image(rn, t + lambda * y) - w;
                if (std::abs(rr) < std::abs(res)) {
                    r = rn;
                    t += lambda * y;
                    res = rr;
                    improved = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if (!improved) break;
    }
    throw NewtonDiverged("invert_A: damped Newton did not reach the tolerance");
}

}  // namespace pmvf
