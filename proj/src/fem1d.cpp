#include "microlub/fem1d.hpp"

#include "microlub/model.hpp"

#include <algorithm>
#include <cmath>

namespace microlub {

VerticalGrid::VerticalGrid(int nZ) : nZ_(nZ) {
    if (nZ < 1) throw std::invalid_argument("vertical grid needs nZ >= 1");
}

// --- FemFunction -------------------------------------------------------------

FemFunction FemFunction::zero(const VerticalGrid& grid) {
    return FemFunction(grid, std::vector<double>(static_cast<std::size_t>(grid.node_count()), 0.0));
}

FemFunction FemFunction::from_dofs(const VerticalGrid& grid, std::span<const double> dofs) {
    if (static_cast<int>(dofs.size()) != grid.dof_count())
        throw std::invalid_argument("dof vector does not match the vertical grid");
    std::vector<double> v(dofs.begin(), dofs.end());
    v.push_back(0.0);
    return FemFunction(grid, std::move(v));
}

FemFunction FemFunction::from_nodal(const VerticalGrid& grid, std::vector<double> values) {
    if (static_cast<int>(values.size()) != grid.node_count())
        throw std::invalid_argument("nodal vector does not match the vertical grid");
    return FemFunction(grid, std::move(values));
}

FemFunction FemFunction::axpy(double scale, const FemFunction& other) const {
    if (!(grid_ == other.grid_)) throw std::invalid_argument("grid mismatch");
    std::vector<double> v(values_.size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = values_[k] + scale * other.values_[k];
    return FemFunction(grid_, std::move(v));
}

// --- Tridiagonal systems -----------------------------------------------------

TridiagonalSystem::TridiagonalSystem(int n)
    : lower(static_cast<std::size_t>(n), 0.0),
      diag(static_cast<std::size_t>(n), 0.0),
      upper(static_cast<std::size_t>(n), 0.0),
      rhs(static_cast<std::size_t>(n), 0.0) {}

std::vector<double> TridiagonalSystem::apply(std::span<const double> x) const {
    const int n = size();
    if (static_cast<int>(x.size()) != n) throw std::invalid_argument("size mismatch in apply");
    std::vector<double> y(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const auto u = static_cast<std::size_t>(i);
        double s = diag[u] * x[u];
        if (i > 0) s += lower[u] * x[u - 1];
        if (i + 1 < n) s += upper[u] * x[u + 1];
        y[u] = s;
    }
    return y;
}

TridiagonalSystem assemble_advected_laplacian(double M, const VerticalGrid& grid, double reaction) {
    require_admissible_roughness(M);
    if (!(reaction >= 0.0) || !std::isfinite(reaction))
        throw std::invalid_argument("reaction coefficient must be finite and >= 0");

    const int n = grid.dof_count();
    const double h = grid.step();
    TridiagonalSystem sys(n);

    // Element [Z_k, Z_k+1] with local hats (left, right); slopes -1/h, +1/h.
    for (int k = 0; k <= grid.interior(); ++k) {
        const double zl = grid.node(k);
        const double zr = grid.node(k + 1);
        const double slope[2] = {-1.0 / h, 1.0 / h};
        // int_e Z * hat_a
        const double z_moment[2] = {h * (2.0 * zl + zr) / 6.0, h * (zl + 2.0 * zr) / 6.0};
        const int idx[2] = {k, k + 1};
        for (int a = 0; a < 2; ++a) {
            const int i = idx[a];
            if (i >= n) continue;
            for (int b = 0; b < 2; ++b) {
                const int j = idx[b];
                if (j >= n) continue;
                const double stiff = slope[a] * slope[b] * h;
                const double advect = M * slope[b] * z_moment[a];
                const double mass = reaction * h * (a == b ? 2.0 : 1.0) / 6.0;
                const double entry = stiff + advect + mass;
                const auto u = static_cast<std::size_t>(i);
                if (j == i) sys.diag[u] += entry;
                else if (j == i + 1) sys.upper[u] += entry;
                else sys.lower[u] += entry;
            }
        }
    }
    return sys;
}

std::vector<double> thomas_solve(const TridiagonalSystem& sys) {
    const int n = sys.size();
    if (n == 0) return {};
    if (static_cast<int>(sys.lower.size()) != n || static_cast<int>(sys.upper.size()) != n ||
        static_cast<int>(sys.rhs.size()) != n)
        throw std::invalid_argument("inconsistent tridiagonal system dimensions");

    double scale = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto u = static_cast<std::size_t>(i);
        scale = std::max({scale, std::abs(sys.lower[u]), std::abs(sys.diag[u]), std::abs(sys.upper[u])});
    }
    const double tiny = 1e-14 * scale;

    std::vector<double> c(static_cast<std::size_t>(n));
    std::vector<double> d(static_cast<std::size_t>(n));
    double pivot = sys.diag[0];
    if (std::abs(pivot) <= tiny) throw SingularSystemError("vanishing pivot in tridiagonal solve");
    c[0] = sys.upper[0] / pivot;
    d[0] = sys.rhs[0] / pivot;
    for (int i = 1; i < n; ++i) {
        const auto u = static_cast<std::size_t>(i);
        pivot = sys.diag[u] - sys.lower[u] * c[u - 1];
        if (std::abs(pivot) <= tiny) throw SingularSystemError("vanishing pivot in tridiagonal solve");
        c[u] = sys.upper[u] / pivot;
        d[u] = (sys.rhs[u] - sys.lower[u] * d[u - 1]) / pivot;
    }
    for (int i = n - 2; i >= 0; --i) {
        const auto u = static_cast<std::size_t>(i);
        d[u] -= c[u] * d[u + 1];
    }
    return d;
}

FemFunction solve_tridiagonal(const TridiagonalSystem& sys, const VerticalGrid& grid) {
    if (sys.size() != grid.dof_count()) throw std::invalid_argument("system does not match the grid");
    const auto x = thomas_solve(sys);
    return FemFunction::from_dofs(grid, x);
}

std::vector<double> load_constant(const VerticalGrid& grid) {
    std::vector<double> l(static_cast<std::size_t>(grid.dof_count()), grid.step());
    l.front() = 0.5 * grid.step();
    return l;
}

void add_gradient_load(std::span<double> rhs, const FemFunction& f, double scale) {
    const auto& grid = f.grid();
    const int n = grid.dof_count();
    if (static_cast<int>(rhs.size()) != n) throw std::invalid_argument("rhs does not match the grid");
    // f' is constant on each element; int_e f' hat = (f_k+1 - f_k) / 2 for both local hats.
    for (int k = 0; k <= grid.interior(); ++k) {
        const double half_jump = 0.5 * (f[k + 1] - f[k]) * scale;
        rhs[static_cast<std::size_t>(k)] += half_jump;
        if (k + 1 < n) rhs[static_cast<std::size_t>(k + 1)] += half_jump;
    }
}

double integrate(const FemFunction& f) {
    const auto v = f.values();
    double s = 0.5 * (v.front() + v.back());
    for (std::size_t k = 1; k + 1 < v.size(); ++k) s += v[k];
    return s * f.grid().step();
}

double integrate_product(const FemFunction& f, const FemFunction& g) {
    if (!(f.grid() == g.grid())) throw std::invalid_argument("grid mismatch");
    const int last = f.grid().node_count() - 1;
    double s = 0.0;
    for (int k = 0; k < last; ++k)
        s += 2.0 * f[k] * g[k] + f[k] * g[k + 1] + f[k + 1] * g[k] + 2.0 * f[k + 1] * g[k + 1];
    return s * f.grid().step() / 6.0;
}

double vz_norm_squared(const FemFunction& f) {
    const int last = f.grid().node_count() - 1;
    double s = 0.0;
    for (int k = 0; k < last; ++k) {
        const double jump = f[k + 1] - f[k];
        s += jump * jump;
    }
    return s / f.grid().step();
}

double vz_norm(const FemFunction& f) { return std::sqrt(vz_norm_squared(f)); }

double l2_norm(const FemFunction& f) { return std::sqrt(integrate_product(f, f)); }

double bilinear_form(double M, double reaction, const FemFunction& phi, const FemFunction& xi) {
    if (!(phi.grid() == xi.grid())) throw std::invalid_argument("grid mismatch");
    const auto& grid = phi.grid();
    const double h = grid.step();
    double s = 0.0;
    for (int k = 0; k <= grid.interior(); ++k) {
        const double zl = grid.node(k);
        const double zr = grid.node(k + 1);
        const double dphi = (phi[k + 1] - phi[k]) / h;
        const double dxi = (xi[k + 1] - xi[k]) / h;
        s += dphi * dxi * h;
        s += M * dphi * (xi[k] * h * (2.0 * zl + zr) + xi[k + 1] * h * (zl + 2.0 * zr)) / 6.0;
    }
    return s + reaction * integrate_product(phi, xi);
}

}  // namespace microlub
