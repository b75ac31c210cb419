#include "config.hpp"

#include <fstream>

#include "pmvf/test_functions.hpp"

namespace pmvf::cli {

json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open config file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw InvalidArgument("config must be a JSON object");
    if (!j.contains("schema_version") || !j["schema_version"].is_number_integer())
        throw InvalidArgument("config needs an integer schema_version");
    if (j["schema_version"].get<int>() != kSchemaVersion)
        throw InvalidArgument("unsupported schema_version " + j["schema_version"].dump());
    return j;
}

double get_number(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number()) throw InvalidArgument(std::string("config needs number '") + key + "'");
    return j[key].get<double>();
}

double get_number(const json& j, const char* key, double fallback) {
    return j.contains(key) ? get_number(j, key) : fallback;
}

int get_int(const json& j, const char* key, int fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number_integer()) throw InvalidArgument(std::string("config needs integer '") + key + "'");
    return j[key].get<int>();
}

Vec get_vec(const json& j, const char* key, int dim) {
    if (!j.contains(key) || !j[key].is_array() || static_cast<int>(j[key].size()) != dim)
        throw InvalidArgument(std::string("config needs array '") + key + "' of length " + std::to_string(dim));
    Vec v(dim);
    for (int k = 0; k < dim; ++k) {
        if (!j[key][k].is_number()) throw InvalidArgument(std::string("non-numeric entry in '") + key + "'");
        v[k] = j[key][k].get<double>();
    }
    return v;
}

Mat get_mat(const json& j, const char* key, int dim) {
    if (!j.contains(key) || !j[key].is_array() || static_cast<int>(j[key].size()) != dim)
        throw InvalidArgument(std::string("config needs a ") + std::to_string(dim) + "x" + std::to_string(dim) +
                              " matrix '" + key + "'");
    Mat m(dim, dim);
    for (int r = 0; r < dim; ++r) {
        const json& row = j[key][r];
        if (!row.is_array() || static_cast<int>(row.size()) != dim)
            throw InvalidArgument(std::string("bad row in matrix '") + key + "'");
        for (int c = 0; c < dim; ++c) m(r, c) = row[c].get<double>();
    }
    return m;
}

SmoothTestFunction make_expression(const json& spec, const PExponent& p, int dim) {
    json s = spec.is_string() ? json{{"id", spec}} : spec;
    if (!s.is_object() || !s.contains("id") || !s["id"].is_string())
        throw InvalidArgument("expression needs an 'id'");
    const std::string id = s["id"];
    if (id == "zero") return linear_function(Vec::Zero(dim), 0.0);
    if (id == "constant") return linear_function(Vec::Zero(dim), get_number(s, "value", 0.0));
    if (id == "linear")
        return linear_function(s.contains("gradient") ? get_vec(s, "gradient", dim) : Vec(Vec::Unit(dim, 0)),
                               get_number(s, "offset", 0.0));
    if (id == "quadratic") {
        const Vec g = s.contains("gradient") ? get_vec(s, "gradient", dim) : Vec(Vec::Zero(dim));
        const Mat H = s.contains("hessian") ? get_mat(s, "hessian", dim) : Mat(Mat::Identity(dim, dim));
        return quadratic_function(get_number(s, "constant", 0.0), g, H);
    }
    if (id == "radial_power") {
        const Vec z = s.contains("center") ? get_vec(s, "center", dim) : Vec(Vec::Zero(dim));
        return radial_power(z, get_number(s, "exponent", p.conjugate()), get_number(s, "scale", 1.0));
    }
    if (id == "fundamental") return fundamental_solution(p, dim);
    throw InvalidArgument("unknown expression id '" + id + "'");
}

Domain make_domain(const json& spec) {
    if (!spec.is_object() || !spec.contains("type") || !spec["type"].is_string())
        throw InvalidArgument("domain needs a 'type' (ball or box)");
    const std::string type = spec["type"];
    const int dim = get_int(spec, "d", 2);
    if (type == "ball")
        return ball_domain(spec.contains("center") ? get_vec(spec, "center", dim) : Vec(Vec::Zero(dim)),
                           get_number(spec, "radius", 1.0));
    if (type == "box") return box_domain(get_vec(spec, "lower", dim), get_vec(spec, "upper", dim));
    throw InvalidArgument("unknown domain type '" + type + "'");
}

DppProblem make_problem(const json& config) {
    if (!config.contains("domain")) throw InvalidArgument("config needs a 'domain'");
    DppProblem prob;
    prob.domain = make_domain(config["domain"]);
    prob.p = PExponent(get_number(config, "p"));
    prob.r = get_number(config, "r", 0.0);
    const int dim = prob.dim();
    auto field = [&](const char* key) -> ScalarField {
        if (!config.contains(key)) return nullptr;
        SmoothTestFunction e = make_expression(config[key], prob.p, dim);
        return e.value;
    };
    prob.f = field("f");
    prob.G = field("G");
    prob.exact = field("exact");
    if (!prob.f) prob.f = [](const Vec&) { return 0.0; };
    if (!prob.G) throw InvalidArgument("config needs boundary data 'G'");
    return prob;
}

DppOptions make_options(const json& config, int threads) {
    DppOptions o;
    o.tol = get_number(config, "tol", o.tol);
    o.root_tol_a = get_number(config, "root_tol", o.root_tol_a);
    o.max_iter = get_int(config, "max_iter", o.max_iter);
    o.radial_nodes = get_int(config, "radial_nodes", o.radial_nodes);
    o.angular_nodes = get_int(config, "angular_nodes", o.angular_nodes);
    const std::string mode = config.value("mode", std::string("picard"));
    if (mode == "gauss_seidel")
        o.gauss_seidel = true;
    else if (mode != "picard")
        throw InvalidArgument("mode must be picard or gauss_seidel");
    const std::string start = config.value("start", std::string("paper"));
    if (start == "extension")
        o.start_from_extension = true;
    else if (start != "paper")
        throw InvalidArgument("start must be paper or extension");
    o.threads = threads;
    return o;
}

}  // namespace pmvf::cli
