#pragma once

/// @file oracles.hpp
/// @brief Brute-force references for verification. Shares only types with the solver.
///
/// - dense Gaussian elimination (partial pivoting)
/// - dense Gauss-Legendre assembly of the column bilinear forms
/// - an RK4 integrator for the potential problem
/// - a monolithic finite-difference solver for the full coupled column problem in the
///   physical gap variable Y = Z h1, closed by the constant-flux condition in x1.

#include "microlub/fem1d.hpp"
#include "microlub/model.hpp"
#include "microlub/scheme.hpp"

#include <functional>
#include <vector>

namespace microlub::oracles {

/// Row-major square matrix.
struct DenseMatrix {
    int n = 0;
    std::vector<double> a;

    explicit DenseMatrix(int size) : n(size), a(static_cast<std::size_t>(size) * static_cast<std::size_t>(size), 0.0) {}
    double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)]; }
    double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)]; }
};

struct DenseSystem {
    DenseMatrix matrix;
    std::vector<double> rhs;

    static DenseSystem from_tridiagonal(const TridiagonalSystem& sys);
};

/// Gaussian elimination with partial pivoting. Throws SingularSystemError.
std::vector<double> dense_solve(const DenseSystem& sys);

/// max_i |(A x - b)_i|.
double dense_residual(const DenseSystem& sys, const std::vector<double>& x);

/// a(phi_j, phi_i) assembled by 4-point Gauss-Legendre quadrature of pointwise hat functions.
DenseMatrix dense_form_matrix(double M, double reaction, const VerticalGrid& grid);

/// Microrotation column solved through dense assembly of the same weak form.
std::vector<double> dense_w_column(const FemFunction& u1_col, double h1_val, const ModelParams& params);

/// Unconstrained velocity column solved through dense assembly of the same weak form.
std::vector<double> dense_u_tilde_column(const FemFunction& w2_col, double h1_val, const ModelParams& params);

/// Potential from the ODE phi' = M Z phi - 1, phi(0) = 0 (phi = dpsi/dZ), RK4 on a fine grid,
/// then psi(Z) = -int_Z^1 phi by composite Simpson on the RK4 nodes.
struct PsiOracle {
    std::vector<double> z;
    std::vector<double> psi;
    std::vector<double> dpsi;
    double mean = 0.0;

    /// Cubic Hermite interpolation between oracle nodes.
    [[nodiscard]] double at(double Z) const;
};

PsiOracle psi_ode_oracle(double M, int steps);

/// Fine-grid solution of the coupled column problem closed by the flux constraint.
struct CoupledReference {
    std::vector<double> x;         ///< pressure nodes
    std::vector<double> p;         ///< pressure, exact zeros at both ends
    std::vector<double> x_mid;     ///< column midpoints
    std::vector<double> dp;        ///< dp/dx1 at midpoints
    std::vector<double> u_wall;    ///< u1(x, 0)
    std::vector<double> w_wall;    ///< w2(x, 0)
    double flux = 0.0;             ///< int_0^{h1} u1 dY, identical in every column
    double W = 0.0;
    double F = 0.0;

    /// Linear interpolation of the pressure.
    [[nodiscard]] double pressure_at(double x1) const;
};

/// Columns at the midpoints of a grid with `columns` intervals in x1; `nY` finite-difference
/// intervals across each gap.
CoupledReference coupled_reference(const ModelParams& params, const std::function<double(double)>& h1,
                                   int columns, int nY);

/// The same reference restricted to the smooth-wall case M = 0.
CoupledReference m0_reference(const ModelParams& params, const std::function<double(double)>& h1,
                              int columns, int nY);

}  // namespace microlub::oracles
