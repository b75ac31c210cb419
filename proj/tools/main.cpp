#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "config.hpp"
#include "pmvf/appendix.hpp"
#include "pmvf/constants.hpp"
#include "pmvf/mvf.hpp"
#include "pmvf/plane.hpp"

namespace pmvf::cli {

int run_selftest(std::ostream& out);

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw InvalidArgument("cannot write " + path);
    out << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json constants_cmd(int d, double p) {
    const NormalizationConstants k = compute_constants(d, PExponent(p));
    return {{"d", d}, {"p", p}, {"C", k.C}, {"D", k.D}};
}

std::string consistency_cmd(const json& cfg) {
    const PExponent p(get_number(cfg, "p"));
    const int dim = get_int(cfg, "d", 2);
    if (!cfg.contains("function")) throw InvalidArgument("config needs a 'function'");
    const SmoothTestFunction phi = make_expression(cfg["function"], p, dim);
    const Vec x = get_vec(cfg, "x", dim);
    std::vector<double> radii = default_radii();
    if (cfg.contains("radii")) radii = cfg["radii"].get<std::vector<double>>();
    const auto rows = consistency_sweep(p, phi, x, radii);
    std::ostringstream os;
    os << "r,value_sphere,value_ball,reference,error_sphere,error_ball\n";
    for (const MvfSample& s : rows)
        os << fmt(s.r) << ',' << fmt(s.value_sphere) << ',' << fmt(s.value_ball) << ',' << fmt(s.reference) << ','
           << fmt(s.error_sphere) << ',' << fmt(s.error_ball) << '\n';
    return os.str();
}

json report_json(const SolverReport& r) {
    json j{{"iterations", r.iterations},
           {"converged", r.converged},
           {"max_iter_exceeded", r.max_iter_exceeded},
           {"scheme_residual", r.scheme_residual},
           {"monotonicity_violations", r.monotonicity_violations},
           {"barrier_violations", r.barrier_violations},
           {"max_root_width", r.max_root_width},
           {"residual_history", r.residual_history}};
    j["sup_error"] = r.sup_error ? json(*r.sup_error) : json(nullptr);
    return j;
}

std::string solve_cmd(const json& cfg, int threads) {
    const DppProblem prob = make_problem(cfg);
    const DppOptions opt = make_options(cfg, threads);
    const double h = get_number(cfg, "h", prob.r / 4.0);
    const DppSolution sol = solve_dpp(prob, h, opt);
    json j = report_json(sol.report);
    j["r"] = prob.r;
    j["h"] = h;
    j["interior_nodes"] = sol.field.interior.size();
    j["barrier"] = {{"C", sol.barrier.C}, {"D", sol.barrier.D}, {"sup_norm", sol.barrier.sup_norm}};
    if (cfg.contains("field_csv")) {
        std::ostringstream os;
        for (int k = 0; k < sol.field.dim; ++k) os << 'x' << k << ',';
        os << "value,exact,error\n";
        for (std::size_t i = 0; i < sol.field.size(); ++i) {
            if (sol.field.classes[i] == NodeClass::Outside) continue;
            const Vec x = sol.field.coordinate(i);
            for (int k = 0; k < sol.field.dim; ++k) os << fmt(x[k]) << ',';
            const double v = sol.field.values[i];
            if (prob.exact) {
                const double e = prob.exact(x);
                os << fmt(v) << ',' << fmt(e) << ',' << fmt(v - e) << '\n';
            } else {
                os << fmt(v) << ",,\n";
            }
        }
        emit(os.str(), cfg["field_csv"].get<std::string>());
    }
    return dump(j);
}

std::string converge_cmd(const json& cfg, int threads) {
    const DppProblem prob = make_problem(cfg);
    const DppOptions opt = make_options(cfg, threads);
    if (!cfg.contains("radii")) throw InvalidArgument("config needs 'radii'");
    const auto radii = cfg["radii"].get<std::vector<double>>();
    const double ratio = get_number(cfg, "h_ratio", 0.25);
    const auto rows = convergence_study(prob, radii, ratio, opt);
    std::ostringstream os;
    os << "r,h,sup_error,iterations,converged,monotonicity_violations,seconds\n";
    for (const ConvergenceRow& r : rows)
        os << fmt(r.r) << ',' << fmt(r.h) << ',' << fmt(r.sup_error) << ',' << r.iterations << ','
           << (r.converged ? 1 : 0) << ',' << r.monotonicity_violations << ',' << fmt(r.seconds) << '\n';
    return os.str();
}

std::string hodograph_cmd(const json& cfg) {
    HodographParams prm;
    prm.n = get_int(cfg, "n", 1);
    prm.C = get_number(cfg, "C", 1.0);
    prm.alpha = get_number(cfg, "alpha", 1.0);
    prm.beta = get_number(cfg, "beta", 1.0);
    prm.epsilon = get_number(cfg, "epsilon", 0.0);
    const PExponent p(get_number(cfg, "p"));
    const HodographIntegral I = mvf_of_A(prm, p, get_number(cfg, "R", 1.0), get_int(cfg, "refinements", 2));
    return dump({{"value", I.value}, {"scale", I.scale}, {"history", I.history}});
}

std::string inequalities_cmd(const std::string& lemma, const json& cfg, std::uint64_t seed) {
    const auto samples = static_cast<std::size_t>(get_int(cfg, "samples", 100000));
    if (lemma == "a1" || lemma == "a2") {
        const PExponent p(get_number(cfg, "p"));
        const SupStability s = lemma == "a1" ? check_lemma_a1(p, get_number(cfg, "eps", 0.0), samples, seed)
                                             : check_lemma_a2(p, samples, seed);
        return dump({{"sup_ratio", s.sup_ratio},
                     {"samples", s.samples},
                     {"stable", s.stable},
                     {"sup_ratio_doubled", s.doubled},
                     {"sup_ratio_reseeded", s.reseeded}});
    }
    if (lemma == "a3") {
        const LemmaA3Result r = check_lemma_a3(get_int(cfg, "d", 2), get_number(cfg, "s", 0.5),
                                               get_int(cfg, "forms", 20), seed);
        return dump({{"sup_ratio", r.sup_refined},
                     {"samples", r.forms},
                     {"stable", r.stable},
                     {"max_relative_change", r.max_relative_change},
                     {"zero_form_value", r.zero_form_value}});
    }
    throw UsageError("--lemma must be a1, a2 or a3");
}

}  // namespace

int dispatch(int argc, char** argv) {
    CLI::App app{"Mean value formulas and dynamic programming for the variational p-Laplacian"};
    app.require_subcommand(1);
    std::string config_path, out_path;
    int threads = 1;
    std::uint64_t seed = 12345;
    app.add_option("--config", config_path, "JSON config (schema_version 1)");
    app.add_option("--out", out_path, "output file (default: stdout)");
    app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "random seed");

    int d = 2, n = 1;
    double p = 2.0;
    auto* constants = app.add_subcommand("constants", "print C_{d,p} and D_{d,p} as JSON");
    constants->add_option("--d", d)->required();
    constants->add_option("--p", p)->required();
    app.add_subcommand("consistency",
                       "mean value operators against Delta_p over radii; CSV columns "
                       "r,value_sphere,value_ball,reference,error_sphere,error_ball");
    app.add_subcommand("solve", "solve the DPP; JSON report, optional CSV field dump (x0..,value,exact,error)");
    app.add_subcommand("converge",
                       "convergence study; CSV columns r,h,sup_error,iterations,converged,"
                       "monotonicity_violations,seconds");
    auto* p0 = app.add_subcommand("p0", "root of the exponent inequality, JSON {n, p0}");
    p0->add_option("--n", n)->required();
    app.add_subcommand("hodograph", "integral of J_p of the hodograph function, JSON {value, scale, history}");
    std::string lemma;
    auto* ineq = app.add_subcommand("verify-inequalities", "appendix inequalities, JSON {sup_ratio, samples, stable}");
    ineq->add_option("--lemma", lemma)->required();
    app.add_subcommand("selftest", "run the invariant battery");

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    auto need_config = [&]() {
        if (config_path.empty()) throw UsageError("this subcommand needs --config");
        return load_config(config_path);
    };
    try {
        const std::string cmd = app.get_subcommands().front()->get_name();
        if (cmd == "constants")
            emit(dump(constants_cmd(d, p)), out_path);
        else if (cmd == "consistency")
            emit(consistency_cmd(need_config()), out_path);
        else if (cmd == "solve")
            emit(solve_cmd(need_config(), threads), out_path);
        else if (cmd == "converge")
            emit(converge_cmd(need_config(), threads), out_path);
        else if (cmd == "p0")
            emit(dump({{"n", n}, {"p0", find_p0(n)}}), out_path);
        else if (cmd == "hodograph")
            emit(hodograph_cmd(need_config()), out_path);
        else if (cmd == "verify-inequalities") {
            const json cfg = config_path.empty() ? json{{"schema_version", kSchemaVersion}} : need_config();
            emit(inequalities_cmd(lemma, cfg, seed), out_path);
        } else if (cmd == "selftest") {
            std::ostringstream os;
            const int code = run_selftest(os);
            emit(os.str(), out_path);
            return code;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.kind() == ErrorKind::Validation ? 1 : 2;
    } catch (const json::exception& e) {
        std::cerr << "error: bad config: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace pmvf::cli

int main(int argc, char** argv) { return pmvf::cli::dispatch(argc, argv); }
