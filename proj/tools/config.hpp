#pragma once

#include <nlohmann/json.hpp>

#include <string>

#include "pmvf/core.hpp"
#include "pmvf/dpp.hpp"

namespace pmvf::cli {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

json load_config(const std::string& path);

double get_number(const json& j, const char* key);
double get_number(const json& j, const char* key, double fallback);
int get_int(const json& j, const char* key, int fallback);
Vec get_vec(const json& j, const char* key, int dim);
Mat get_mat(const json& j, const char* key, int dim);

/// Expression ids: constant, linear, quadratic, radial_power, fundamental, zero.
/// A bare string selects the id with default parameters.
SmoothTestFunction make_expression(const json& spec, const PExponent& p, int dim);

Domain make_domain(const json& spec);

/// Problem from a `solve` or `converge` config (r taken from the config when present).
DppProblem make_problem(const json& config);
DppOptions make_options(const json& config, int threads);

}  // namespace pmvf::cli
