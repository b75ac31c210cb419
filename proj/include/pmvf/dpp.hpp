#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pmvf/core.hpp"
#include "pmvf/quadrature.hpp"

namespace pmvf {

/// Bounded open set given by a signed distance (negative inside) and a bounding box.
struct Domain {
    std::string kind;
    ScalarField signed_distance;
    Vec lower;
    Vec upper;

    int dim() const { return static_cast<int>(lower.size()); }
};

Domain ball_domain(const Vec& center, double radius);
Domain box_domain(const Vec& lower, const Vec& upper);

/// -M_r^p[U] = f in Omega, U = G on the collar {x outside Omega : dist(x, Omega) <= r}.
struct DppProblem {
    Domain domain;
    PExponent p{2.0};
    double r = 0.0;
    ScalarField f;
    ScalarField G;
    ScalarField exact;  // optional

    int dim() const { return domain.dim(); }
};

/// Collar nodes carry the boundary data. Halo nodes sit just past the collar and hold G
/// so that multilinear interpolation near the outer edge of the collar stays in the lattice.
enum class NodeClass : std::uint8_t { Interior, Collar, Halo, Outside };

struct GridField {
    int dim = 0;
    double h = 0.0;
    Vec origin;
    std::array<int, 3> shape{1, 1, 1};
    std::array<std::ptrdiff_t, 3> strides{0, 0, 0};
    std::vector<NodeClass> classes;
    std::vector<double> values;
    std::vector<std::size_t> interior;  // indices of Interior nodes, ascending

    std::size_t size() const noexcept { return values.size(); }
    Vec coordinate(std::size_t index) const;
    std::array<int, 3> multi_index(std::size_t index) const;
    bool is_boundary(std::size_t index) const {
        return classes[index] == NodeClass::Collar || classes[index] == NodeClass::Halo;
    }
};

/// Uniform lattice at integer multiples of h over the bounding box inflated by r + 2h.
/// Interior iff signed distance < 0, Collar iff 0 <= sd <= r, Halo iff r < sd <= r + sqrt(d) h.
/// Boundary values are set to G, interior values to 0.
GridField build_grid(const DppProblem& problem, double h);

struct DppOptions {
    int radial_nodes = 4;
    int angular_nodes = 16;   // d = 2: points on each circle; d = 3: polar points (2x azimuths)
    double tol = 1e-9;        // sup |U_{k+1} - U_k|
    double root_tol_a = 1e-12;
    int max_iter = 100000;
    bool gauss_seidel = false;
    bool check_bracket = true;
    bool start_from_extension = false;  // solve_dpp: start from G on Interior nodes instead of inf G - psi
    int threads = 1;
};

/// Quadrature points of the ball rule folded into lattice offsets: the interpolated value at
/// x + r y_q is sum_c weight_c U[x + offset_c]. The same stencil serves every lattice node.
class BallStencil {
public:
    BallStencil(const GridField& grid, double r, const DppOptions& options = {});

    std::size_t points() const noexcept { return weights_.size(); }
    double weight(std::size_t q) const noexcept { return weights_[q]; }

    /// Interpolated values at the quadrature points around node `index`.
    void gather(const std::vector<double>& values, std::size_t index, std::vector<double>& out) const;

    /// Throws InterpolationOutOfHull if a stencil corner of an Interior node is Outside.
    void validate(const GridField& grid) const;

private:
    std::vector<double> weights_;
    std::vector<std::uint32_t> begin_;
    std::vector<std::ptrdiff_t> offsets_;
    std::vector<double> corner_weights_;
    std::vector<std::array<int, 3>> corner_steps_;
};

/// a -> avg_{B_r(x)} J_p(U(x + y) - a) for one node, with the interpolated samples frozen.
class BallAverageFunctional {
public:
    BallAverageFunctional(const PExponent& p, const BallStencil& stencil, std::vector<double> samples);

    double operator()(double a) const;
    double derivative(double a) const;  // d/da, negative
    double evaluate(double a, double& derivative) const;
    double min_sample() const noexcept { return min_; }
    double max_sample() const noexcept { return max_; }
    const std::vector<double>& samples() const noexcept { return samples_; }
    const PExponent& p() const noexcept { return p_; }

private:
    PExponent p_;
    const BallStencil* stencil_;
    std::vector<double> samples_;
    double min_ = 0.0;
    double max_ = 0.0;
};

BallAverageFunctional ball_average_field(const PExponent& p, const GridField& field,
                                         const BallStencil& stencil, std::size_t index);

struct PointSolve {
    double a = 0.0;
    double residual = 0.0;  // F(a) + D r^p f, in units of the average
    double width = 0.0;     // width of the final sign-change bracket
    int evaluations = 0;
};

/// Root of -(1/(D r^p)) F(a) = f inside [min + J^{-1}(D r^p f), max + J^{-1}(D r^p f)].
/// Safeguarded Newton, finishing once a sign change of width <= root_tol_a is certified.
PointSolve pointwise_solve(const BallAverageFunctional& functional, double f_value, double D, double r,
                           const DppOptions& options = {}, std::optional<double> start = {});

struct Barrier {
    Vec z;
    double C = 0.0;
    double D = 0.0;
    double D_margin = 0.0;
    double amplitude = 0.0;       // psi = C - amplitude |x - z|^{p/(p-1)}
    double sup_norm = 0.0;        // max |psi| over lattice nodes
    double min_discrete_excess = 0.0;  // min over Interior of -M[psi] - ||f||_inf
    std::vector<double> nodal;    // psi at every lattice node

    double operator()(const Vec& x, double p) const;
};

/// Supersolution C - (D/d)^{1/(p-1)} ((p-1)/p) |x - z|^{p/(p-1)}, whose p-Laplacian is -D.
/// D starts at ||f|| + margin and is doubled until the discrete inequality -M[psi] >= ||f||
/// holds at every Interior node; C makes psi >= ||G|| at every lattice node.
Barrier barrier(const DppProblem& problem, const GridField& grid, const DppOptions& options = {});

/// inf G - psi on Interior nodes, G elsewhere.
GridField paper_initial_field(const DppProblem& problem, const GridField& grid, const Barrier& psi);

/// G evaluated at every non-Outside node, Interior included.
GridField extension_initial_field(const DppProblem& problem, const GridField& grid);

struct SolverReport {
    int iterations = 0;
    bool converged = false;
    bool max_iter_exceeded = false;
    std::vector<double> residual_history;
    double scheme_residual = 0.0;
    std::optional<double> sup_error;
    std::size_t monotonicity_violations = 0;
    std::size_t barrier_violations = 0;
    double max_root_width = 0.0;
    std::size_t bracket_checks = 0;
    std::size_t evaluations = 0;  // functional evaluations over all pointwise solves
};

/// Jacobi (or Gauss-Seidel) sweeps of the pointwise solve until the sup update is <= tol.
/// When `psi` is given, every iterate is also checked against it.
std::pair<GridField, SolverReport> picard_iterate(const DppProblem& problem, const GridField& start,
                                                  const DppOptions& options = {},
                                                  const Barrier* psi = nullptr);

/// Interior: -M[U](x) - f(x). Boundary nodes: U(x) - G(x). Returns the sup of |S|.
double scheme_residual(const DppProblem& problem, const GridField& field, const DppOptions& options = {});

/// S(r, x, t, U) at one Interior node.
double scheme_value(const DppProblem& problem, const GridField& field, const BallStencil& stencil,
                    std::size_t index, double t);

struct DppSolution {
    GridField field;
    SolverReport report;
    Barrier barrier;
};

/// build_grid + barrier + initial field + picard_iterate.
DppSolution solve_dpp(const DppProblem& problem, double h, const DppOptions& options = {});

struct ComparisonResult {
    int trials = 0;
    std::size_t violations = 0;
    double max_excess = 0.0;      // max over nodes of U1 - U2
    double max_shift_error = 0.0; // constant-shift equivariance defect
};

/// Random ordered data pairs (f1 <= f2, G1 <= G2) on `base`; counts nodes with U1 > U2 + 2 tol.
/// Also solves (f, G + c) and records |U_c - U - c|.
ComparisonResult comparison_check(const DppProblem& base, double h, int trials, std::uint64_t seed,
                                  const DppOptions& options = {});

struct ConvergenceRow {
    double r = 0.0;
    double h = 0.0;
    double sup_error = 0.0;
    int iterations = 0;
    bool converged = false;
    std::size_t monotonicity_violations = 0;
    std::size_t barrier_violations = 0;
    double seconds = 0.0;
};

/// Solves `problem` at each radius with h = h_ratio * r and reports the sup error on Interior nodes.
std::vector<ConvergenceRow> convergence_study(const DppProblem& problem, const std::vector<double>& radii,
                                              double h_ratio, const DppOptions& options = {});

}  // namespace pmvf
