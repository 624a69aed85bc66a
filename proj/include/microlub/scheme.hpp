#pragma once

/// @file scheme.hpp
/// @brief Fixed-point solver for the lubrication-limit micropolar film.
///
/// One sweep maps the velocity u1^n to u1^{n+1}:
///   1. per column: microrotation w2^n from u1^n, then the unconstrained velocity ũ1^{n+1};
///   2. Reynolds equation d(psī h1^3 dp) = d(int h1 ũ1 dZ), p(0) = p(1) = 0;
///   3. per column: u1^{n+1} = ũ1^{n+1} - h1^2 dp psi, which makes the flux int h1 u1 dZ
///      constant in x1.
/// Columns live at the midpoints x_{i+1/2} of the pressure grid. The column loops of
/// `iterate` run under OpenMP; `iterate_serial` is the single-threaded reference and
/// produces bit-identical states.

#include "microlub/fem1d.hpp"
#include "microlub/model.hpp"

#include <span>
#include <vector>

namespace microlub {

class HorizontalGrid {
public:
    explicit HorizontalGrid(int n1);

    [[nodiscard]] int interior() const { return n1_; }
    [[nodiscard]] double step() const { return 1.0 / (n1_ + 1); }
    [[nodiscard]] int node_count() const { return n1_ + 2; }
    [[nodiscard]] int column_count() const { return n1_ + 1; }
    [[nodiscard]] double node(int i) const { return static_cast<double>(i) / (n1_ + 1); }
    [[nodiscard]] double midpoint(int i) const { return (i + 0.5) / (n1_ + 1); }

    friend bool operator==(const HorizontalGrid&, const HorizontalGrid&) = default;

private:
    int n1_;
};

struct Grids {
    HorizontalGrid horizontal;
    VerticalGrid vertical;

    Grids(int n1, int nZ) : horizontal(n1), vertical(nZ) {}
};

/// Solution of -psi'' + M Z psi' = 1, psi'(0) = 0, psi(1) = 0, and its average.
struct Potential {
    FemFunction psi;
    double mean;
};

Potential solve_potential(double M, const VerticalGrid& grid);

/// Microrotation column: -R_c w'' + R_c M Z w' + 4N^2 h1^2 w = 2N^2 h1 u',
/// w(1) = 0, R_c w'(0) = -2N^2 h1 beta (u(0) - s1).
FemFunction solve_w_column(const FemFunction& u1_col, double h1_val, const ModelParams& params);

/// Unconstrained velocity column: -u'' + M Z u' = -2N^2 h1 w',
/// u(1) = 0, u'(0) = (2/alpha) h1 w(0).
FemFunction solve_u_tilde_column(const FemFunction& w2_col, double h1_val, const ModelParams& params);

/// h1(x_{i+1/2}) * int_0^1 col dZ for every column.
std::vector<double> column_fluxes(std::span<const FemFunction> columns, const BearingGeometry& geometry,
                                  const HorizontalGrid& hgrid);

/// Pressure on the nodes x1^i from the two-point flux discretization of the Reynolds equation.
std::vector<double> solve_reynolds(std::span<const FemFunction> u_tilde, double psi_bar,
                                   const BearingGeometry& geometry, const HorizontalGrid& hgrid);

/// (p_{i+1} - p_i) / h_x1 at every column midpoint.
std::vector<double> pressure_gradient(std::span<const double> p, const HorizontalGrid& hgrid);

/// u1 = ũ1 - h1^2 dp psi, nodewise.
FemFunction correct_velocity(const FemFunction& u_tilde_col, double dp_mid, double h1_val,
                             const Potential& psi);

/// max_i |F_{i+1/2} - F_{i-1/2}| / h_x1 over interior nodes, F = h1 int u dZ.
double max_flux_divergence(std::span<const FemFunction> u1, const BearingGeometry& geometry,
                           const HorizontalGrid& hgrid);

/// Discrete L^2_{x1}(V_Z) norm: (h_x1 sum_i ||col_i||_{V_Z}^2)^{1/2}.
double field_norm(std::span<const FemFunction> columns, const HorizontalGrid& hgrid);

struct SchemeState {
    std::vector<FemFunction> u1;  ///< u1^n per column
    std::vector<FemFunction> w2;  ///< microrotation that produced u1^n (zero for the initial state)
    std::vector<double> p;        ///< pressure on nodes, p(0) = p(1) = 0
    int iteration = 0;
    double last_update_norm = 0.0;
};

enum class InitialProfile {
    Couette,  ///< u1^0 = s1 (1 - Z)
    Zero,
};

SchemeState initial_state(const ModelParams& params, const Grids& grids, InitialProfile profile);

/// One full sweep, column loops parallelized with OpenMP.
SchemeState iterate(const SchemeState& state, const ModelParams& params, const BearingGeometry& geometry,
                    const Grids& grids, const Potential& psi);

/// Same sweep, single-threaded.
SchemeState iterate_serial(const SchemeState& state, const ModelParams& params,
                           const BearingGeometry& geometry, const Grids& grids, const Potential& psi);

struct StabilityReport {
    double C = 0.0;
    double condition_value = 0.0;  ///< C (1 + beta)
    bool satisfied = false;        ///< condition_value <= 1
};

/// Bound constant of the a-priori estimate
/// ||u1^{n+1}|| <= C [(1 + beta) ||u1^n|| + beta |s1|].
StabilityReport stability_constant(const ModelParams& params, double sup_h1, double inf_h1,
                                   double psi_vz_norm, double psi_bar);

/// Same, with sup/inf of h1 over the pressure nodes and the discrete V_Z norm of psi.
StabilityReport stability_constant(const ModelParams& params, const BearingGeometry& geometry,
                                   const Potential& psi, const HorizontalGrid& hgrid);

struct IterationRecord {
    int iteration = 0;
    double update_norm = 0.0;        ///< ||u1^{n+1} - u1^n||
    double previous_norm = 0.0;      ///< ||u1^n||
    double norm = 0.0;               ///< ||u1^{n+1}||
    double max_flux_divergence = 0.0;
};

struct SolverOptions {
    double tol = 1e-8;
    int max_iter = 500;
    InitialProfile init = InitialProfile::Couette;
    bool parallel = true;
};

struct SolveResult {
    SchemeState state;
    Potential potential;
    StabilityReport stability;
    std::vector<IterationRecord> trace;
    bool converged = false;
};

/// Iterates until ||u1^{n+1} - u1^n|| <= tol (1 + ||u1^n||) or max_iter sweeps.
/// Non-convergence is reported through SolveResult::converged.
SolveResult solve(const ModelParams& params, const BearingGeometry& geometry, const Grids& grids,
                  const SolverOptions& options = {});

}  // namespace microlub
