#pragma once

/// @file fem1d.hpp
/// @brief Piecewise-linear finite elements on the vertical segment [0,1].
///
/// The trial space V_nZ holds continuous piecewise-affine functions on the uniform
/// grid Z_k = k h_Z (h_Z = 1/(nZ+1)) that vanish at Z = 1. Its degrees of freedom
/// are the nodal values at Z_0..Z_nZ; Z = 0 carries a natural (Neumann/Robin) condition.

#include <span>
#include <stdexcept>
#include <vector>

namespace microlub {

/// Thrown when elimination meets a vanishing pivot.
class SingularSystemError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class VerticalGrid {
public:
    explicit VerticalGrid(int nZ);

    [[nodiscard]] int interior() const { return nZ_; }
    [[nodiscard]] double step() const { return 1.0 / (nZ_ + 1); }
    [[nodiscard]] int node_count() const { return nZ_ + 2; }
    /// Unknowns of V_nZ: every node except Z = 1.
    [[nodiscard]] int dof_count() const { return nZ_ + 1; }
    [[nodiscard]] double node(int k) const { return static_cast<double>(k) / (nZ_ + 1); }

    friend bool operator==(const VerticalGrid&, const VerticalGrid&) = default;

private:
    int nZ_;
};

/// Nodal values on a VerticalGrid.
class FemFunction {
public:
    /// Zero member of V_nZ.
    static FemFunction zero(const VerticalGrid& grid);
    /// Member of V_nZ from its nZ+1 degrees of freedom (value at Z = 1 set to 0).
    static FemFunction from_dofs(const VerticalGrid& grid, std::span<const double> dofs);
    /// Arbitrary P1 function (not necessarily in V_nZ) from all nZ+2 nodal values.
    static FemFunction from_nodal(const VerticalGrid& grid, std::vector<double> values);
    /// Nodal interpolant of f; in V_nZ only if f(1) == 0.
    template <class F>
    static FemFunction interpolate(const VerticalGrid& grid, F&& f) {
        std::vector<double> v(static_cast<std::size_t>(grid.node_count()));
        for (int k = 0; k < grid.node_count(); ++k) v[static_cast<std::size_t>(k)] = f(grid.node(k));
        return from_nodal(grid, std::move(v));
    }

    [[nodiscard]] const VerticalGrid& grid() const { return grid_; }
    [[nodiscard]] std::span<const double> values() const { return values_; }
    [[nodiscard]] double operator[](int k) const { return values_[static_cast<std::size_t>(k)]; }
    [[nodiscard]] double at_wall() const { return values_.front(); }
    [[nodiscard]] bool in_trial_space() const { return values_.back() == 0.0; }

    /// Degrees of freedom (first nZ+1 values).
    [[nodiscard]] std::span<const double> dofs() const {
        return std::span<const double>(values_).first(values_.size() - 1);
    }

    /// this + scale * other, nodewise.
    [[nodiscard]] FemFunction axpy(double scale, const FemFunction& other) const;

    friend bool operator==(const FemFunction&, const FemFunction&) = default;

private:
    FemFunction(VerticalGrid grid, std::vector<double> values)
        : grid_(grid), values_(std::move(values)) {}

    VerticalGrid grid_;
    std::vector<double> values_;
};

/// Tridiagonal matrix plus right-hand side. lower[0] and upper[n-1] are unused (zero).
struct TridiagonalSystem {
    std::vector<double> lower;
    std::vector<double> diag;
    std::vector<double> upper;
    std::vector<double> rhs;

    TridiagonalSystem() = default;
    explicit TridiagonalSystem(int n);

    [[nodiscard]] int size() const { return static_cast<int>(diag.size()); }
    /// A x, for residual checks.
    [[nodiscard]] std::vector<double> apply(std::span<const double> x) const;
};

/// Matrix of a(phi, xi) = int phi' xi' + M int Z phi' xi + reaction int phi xi on V_nZ.
///
/// Row i is tested against the hat function at Z_i, column j is the trial hat at Z_j.
/// Element integrals are exact. The right-hand side is left at zero.
TridiagonalSystem assemble_advected_laplacian(double M, const VerticalGrid& grid, double reaction);

/// Thomas elimination; throws SingularSystemError on a vanishing pivot.
std::vector<double> thomas_solve(const TridiagonalSystem& sys);

/// Solves a system assembled on V_nZ and returns the member of V_nZ.
FemFunction solve_tridiagonal(const TridiagonalSystem& sys, const VerticalGrid& grid);

/// Load vector entries int_0^1 phi_i for the dofs of V_nZ.
std::vector<double> load_constant(const VerticalGrid& grid);

/// Adds scale * int_0^1 f' phi_i to rhs (f any P1 function on the grid).
void add_gradient_load(std::span<double> rhs, const FemFunction& f, double scale);

/// Exact integral of a P1 function (composite trapezoid).
double integrate(const FemFunction& f);
/// Exact integral of the product of two P1 functions.
double integrate_product(const FemFunction& f, const FemFunction& g);

/// (int (f')^2)^{1/2}, the V_Z norm.
double vz_norm(const FemFunction& f);
double vz_norm_squared(const FemFunction& f);
/// (int f^2)^{1/2}.
double l2_norm(const FemFunction& f);

/// Discrete bilinear form a(phi, xi) evaluated from nodal values (P1 exact integration).
double bilinear_form(double M, double reaction, const FemFunction& phi, const FemFunction& xi);

}  // namespace microlub
