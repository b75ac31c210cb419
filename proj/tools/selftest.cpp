#include <cmath>
#include <functional>
#include <ostream>
#include <random>
#include <string>

#include "pmvf/appendix.hpp"
#include "pmvf/constants.hpp"
#include "pmvf/dpp.hpp"
#include "pmvf/mvf.hpp"
#include "pmvf/plane.hpp"
#include "pmvf/test_functions.hpp"

namespace pmvf::cli {

int run_selftest(std::ostream& out) {
    int failures = 0;
    auto check = [&](const std::string& name, const std::function<bool()>& body) {
        bool ok = false;
        try {
            ok = body();
        } catch (const std::exception& e) {
            out << "  " << e.what() << '\n';
        }
        out << (ok ? "PASS " : "FAIL ") << name << '\n';
        if (!ok) ++failures;
    };

    check("jp odd and increasing", [] {
        std::mt19937_64 gen(1);
        std::uniform_real_distribution<double> u(-10.0, 10.0);
        for (double pv : {1.2, 1.5, 2.0, 3.0, 4.5}) {
            const PExponent p(pv);
            for (int i = 0; i < 1000; ++i) {
                const double a = u(gen), b = u(gen);
                if (jp(p, -a) != -jp(p, a)) return false;
                if ((a < b) != (jp(p, a) < jp(p, b)) && a != b) return false;
            }
        }
        return true;
    });
    check("jp_inverse inverts jp", [] {
        for (double pv : {1.1, 1.5, 2.5, 3.0, 6.0})
            for (double t = 1e-6; t < 1e6; t *= 3.7) {
                const PExponent p(pv);
                if (std::fabs(jp_inverse(p, jp(p, t)) - t) > 1e-10 * t) return false;
            }
        return true;
    });
    check("constants C_{2,4} and C_{d,2}", [] {
        return std::fabs(compute_constants(2, PExponent(4)).C - 0.1875) < 1e-10 &&
               std::fabs(compute_constants(2, PExponent(2)).C - 0.25) < 1e-12 &&
               std::fabs(compute_constants(3, PExponent(2)).C - 1.0 / 6.0) < 1e-12 &&
               compute_constants(1, PExponent(2.7)).C == 0.5;
    });
    check("integration by parts identity", [] {
        for (int d : {2, 3})
            for (double pv : {1.5, 2.0, 3.0, 4.0})
                if (check_ibp_identity(d, PExponent(pv), 2).residual >= 1e-6) return false;
        return true;
    });
    check("mvf of a linear function vanishes", [] {
        Vec g(2);
        g << 0.7, -1.3;
        const auto phi = linear_function(g, 0.4);
        Vec x(2);
        x << 0.2, 0.1;
        return mvf_sphere(PExponent(1.5), phi, x, 0.05) == 0.0 && mvf_ball(PExponent(3), phi, x, 0.05) == 0.0;
    });
    check("mvf consistency for |x-z|^{p/(p-1)}", [] {
        const PExponent p(3.0);
        Vec z(2), x(2);
        z << 2.0, 0.0;
        x << 0.1, 0.2;
        return std::fabs(mvf_sphere(p, radial_power(z, p.conjugate()), x, 1e-2) - 4.5) < 1e-6;
    });
    check("p0 roots", [] {
        const double a = find_p0(1), b = find_p0(2);
        return a >= 1.116 && a <= 1.118 && b >= 1.05 && b <= 1.07;
    });
    check("hodograph integral vanishes", [] {
        HodographParams prm;
        prm.n = 1;
        prm.C = 1.7;
        prm.alpha = 1.4;
        prm.beta = 0.9;
        prm.epsilon = 0.2;
        const HodographIntegral I = mvf_of_A(prm, PExponent(1.4), 1.3);
        return std::fabs(I.value) <= 1e-8 * I.scale;
    });
    check("appendix ratios stable", [] {
        return check_lemma_a1(PExponent(3.0), 0.0, 20000, 5).stable &&
               check_lemma_a2(PExponent(1.5), 20000, 5).stable;
    });
    check("dpp constant data is a fixed point", [] {
        DppProblem prob;
        prob.domain = ball_domain(Vec::Zero(2), 1.0);
        prob.p = PExponent(1.5);
        prob.r = 0.3;
        prob.f = [](const Vec&) { return 0.0; };
        prob.G = [](const Vec&) { return 2.5; };
        prob.exact = prob.G;
        DppOptions opt;
        opt.start_from_extension = true;
        const DppSolution sol = solve_dpp(prob, 0.1, opt);
        return sol.report.converged && sol.report.iterations == 1 && *sol.report.sup_error <= 1e-12;
    });
    out << (failures == 0 ? "selftest passed\n" : "selftest failed\n");
    return failures == 0 ? 0 : 2;
}

}  // namespace pmvf::cli
