#include "microlub/oracles.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace microlub::oracles {

// --- Dense linear algebra ----------------------------------------------------

DenseSystem DenseSystem::from_tridiagonal(const TridiagonalSystem& sys) {
    const int n = sys.size();
    DenseSystem d{DenseMatrix(n), sys.rhs};
    for (int i = 0; i < n; ++i) {
        const auto u = static_cast<std::size_t>(i);
        d.matrix(i, i) = sys.diag[u];
        if (i > 0) d.matrix(i, i - 1) = sys.lower[u];
        if (i + 1 < n) d.matrix(i, i + 1) = sys.upper[u];
    }
    return d;
}

std::vector<double> dense_solve(const DenseSystem& sys) {
    const int n = sys.matrix.n;
    if (static_cast<int>(sys.rhs.size()) != n) throw std::invalid_argument("dense system dimension mismatch");
    DenseMatrix a = sys.matrix;
    std::vector<double> b = sys.rhs;

    double scale = 0.0;
    for (double v : a.a) scale = std::max(scale, std::abs(v));

    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
        if (std::abs(a(piv, k)) <= 1e-300 + 1e-15 * scale) throw SingularSystemError("dense matrix is singular");
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            std::swap(b[static_cast<std::size_t>(k)], b[static_cast<std::size_t>(piv)]);
        }
        for (int i = k + 1; i < n; ++i) {
            const double f = a(i, k) / a(k, k);
            if (f == 0.0) continue;
            for (int j = k; j < n; ++j) a(i, j) -= f * a(k, j);
            b[static_cast<std::size_t>(i)] -= f * b[static_cast<std::size_t>(k)];
        }
    }
    std::vector<double> x(static_cast<std::size_t>(n));
    for (int i = n - 1; i >= 0; --i) {
        double s = b[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < n; ++j) s -= a(i, j) * x[static_cast<std::size_t>(j)];
        x[static_cast<std::size_t>(i)] = s / a(i, i);
    }
    return x;
}

double dense_residual(const DenseSystem& sys, const std::vector<double>& x) {
    double worst = 0.0;
    for (int i = 0; i < sys.matrix.n; ++i) {
        double s = -sys.rhs[static_cast<std::size_t>(i)];
        for (int j = 0; j < sys.matrix.n; ++j) s += sys.matrix(i, j) * x[static_cast<std::size_t>(j)];
        worst = std::max(worst, std::abs(s));
    }
    return worst;
}

// --- Dense quadrature assembly ----------------------------------------------

namespace {

constexpr std::array<double, 4> kGaussNodes = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                                               0.8611363115940526};
constexpr std::array<double, 4> kGaussWeights = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                                                 0.3478548451374538};

double hat(const VerticalGrid& g, int j, double Z) {
    return std::max(0.0, 1.0 - std::abs(Z - g.node(j)) / g.step());
}

// Derivative of the hat at Z_j, evaluated strictly inside an element.
double hat_slope(const VerticalGrid& g, int j, double Z) {
    const double zj = g.node(j);
    const double h = g.step();
    if (Z > zj - h && Z < zj) return 1.0 / h;
    if (Z > zj && Z < zj + h) return -1.0 / h;
    return 0.0;
}

double nodal_value(const FemFunction& f, double Z) {
    const auto& g = f.grid();
    double s = 0.0;
    for (int j = 0; j < g.node_count(); ++j) s += f[j] * hat(g, j, Z);
    return s;
}

double nodal_slope(const FemFunction& f, double Z) {
    const auto& g = f.grid();
    const int k = std::min(static_cast<int>(Z / g.step()), g.node_count() - 2);
    return f[k] * hat_slope(g, k, Z) + f[k + 1] * hat_slope(g, k + 1, Z);
}

template <class Fn>
void for_each_quadrature_point(const VerticalGrid& g, Fn&& fn) {
    const double h = g.step();
    for (int e = 0; e < g.node_count() - 1; ++e) {
        const double mid = g.node(e) + 0.5 * h;
        for (std::size_t q = 0; q < kGaussNodes.size(); ++q)
            fn(e, mid + 0.5 * h * kGaussNodes[q], 0.5 * h * kGaussWeights[q]);
    }
}

}  // namespace

DenseMatrix dense_form_matrix(double M, double reaction, const VerticalGrid& grid) {
    const int n = grid.dof_count();
    DenseMatrix A(n);
    for_each_quadrature_point(grid, [&](int e, double Z, double w) {
        for (int i = e; i <= e + 1 && i < n; ++i)
            for (int j = e; j <= e + 1 && j < n; ++j) {
                const double dpj = hat_slope(grid, j, Z);
                A(i, j) += w * (dpj * hat_slope(grid, i, Z) + M * Z * dpj * hat(grid, i, Z) +
                                reaction * hat(grid, j, Z) * hat(grid, i, Z));
            }
    });
    return A;
}

std::vector<double> dense_w_column(const FemFunction& u1_col, double h1_val, const ModelParams& params) {
    const auto& g = u1_col.grid();
    const double n2 = params.coupling();
    const double Rc = params.Rc();
    DenseSystem sys{dense_form_matrix(params.M(), 4.0 * n2 * h1_val * h1_val / Rc, g),
                    std::vector<double>(static_cast<std::size_t>(g.dof_count()), 0.0)};
    for_each_quadrature_point(g, [&](int e, double Z, double w) {
        for (int i = e; i <= e + 1 && i < g.dof_count(); ++i)
            sys.rhs[static_cast<std::size_t>(i)] += w * 2.0 * n2 * h1_val / Rc * nodal_slope(u1_col, Z) * hat(g, i, Z);
    });
    sys.rhs[0] += 2.0 * n2 * h1_val * params.beta() * (nodal_value(u1_col, 0.0) - params.s1()) / Rc;
    return dense_solve(sys);
}

std::vector<double> dense_u_tilde_column(const FemFunction& w2_col, double h1_val, const ModelParams& params) {
    const auto& g = w2_col.grid();
    DenseSystem sys{dense_form_matrix(params.M(), 0.0, g),
                    std::vector<double>(static_cast<std::size_t>(g.dof_count()), 0.0)};
    for_each_quadrature_point(g, [&](int e, double Z, double w) {
        for (int i = e; i <= e + 1 && i < g.dof_count(); ++i)
            sys.rhs[static_cast<std::size_t>(i)] -=
                w * 2.0 * params.coupling() * h1_val * nodal_slope(w2_col, Z) * hat(g, i, Z);
    });
    sys.rhs[0] -= (2.0 / params.alpha()) * h1_val * nodal_value(w2_col, 0.0);
    return dense_solve(sys);
}

// --- Potential ODE -----------------------------------------------------------

double PsiOracle::at(double Z) const {
    const double h = z[1] - z[0];
    const int last = static_cast<int>(z.size()) - 1;
    const int k = std::clamp(static_cast<int>(Z / h), 0, last - 1);
    const auto u = static_cast<std::size_t>(k);
    const double t = (Z - z[u]) / h;
    const double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
    const double h10 = t * (1 - t) * (1 - t);
    const double h01 = t * t * (3 - 2 * t);
    const double h11 = t * t * (t - 1);
    return h00 * psi[u] + h10 * h * dpsi[u] + h01 * psi[u + 1] + h11 * h * dpsi[u + 1];
}

PsiOracle psi_ode_oracle(double M, int steps) {
    require_admissible_roughness(M);
    if (steps < 10) throw std::invalid_argument("psi oracle needs at least 10 steps");

    // State: slope phi = psi', running integral I = int_0^Z phi, and J = int_0^Z I.
    // The quadratures ride along as extra RK4 components.
    using State = std::array<double, 3>;
    auto rhs = [M](double Z, const State& y) -> State { return {M * Z * y[0] - 1.0, y[0], y[1]}; };

    const double h = 1.0 / steps;
    std::vector<State> ys(static_cast<std::size_t>(steps) + 1);
    State y{0.0, 0.0, 0.0};
    ys[0] = y;
    for (int s = 0; s < steps; ++s) {
        const double Z = s * h;
        const State k1 = rhs(Z, y);
        State t;
        for (int c = 0; c < 3; ++c) t[c] = y[c] + 0.5 * h * k1[c];
        const State k2 = rhs(Z + 0.5 * h, t);
        for (int c = 0; c < 3; ++c) t[c] = y[c] + 0.5 * h * k2[c];
        const State k3 = rhs(Z + 0.5 * h, t);
        for (int c = 0; c < 3; ++c) t[c] = y[c] + h * k3[c];
        const State k4 = rhs(Z + h, t);
        for (int c = 0; c < 3; ++c) y[c] += h / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
        ys[static_cast<std::size_t>(s) + 1] = y;
    }

    PsiOracle out;
    const double total = ys.back()[1];
    out.z.resize(ys.size());
    out.psi.resize(ys.size());
    out.dpsi.resize(ys.size());
    for (std::size_t s = 0; s < ys.size(); ++s) {
        out.z[s] = static_cast<double>(s) * h;
        out.psi[s] = ys[s][1] - total;  // psi(Z) = -int_Z^1 phi
        out.dpsi[s] = ys[s][0];
    }
    out.psi.back() = 0.0;
    out.mean = ys.back()[2] - total;
    return out;
}

// --- Coupled finite-difference reference -------------------------------------

double CoupledReference::pressure_at(double x1) const {
    const double h = x[1] - x[0];
    const int last = static_cast<int>(x.size()) - 1;
    const int k = std::clamp(static_cast<int>(x1 / h), 0, last - 1);
    const auto u = static_cast<std::size_t>(k);
    const double t = (x1 - x[u]) / h;
    return (1.0 - t) * p[u] + t * p[u + 1];
}

namespace {

struct ColumnTraces {
    double flux = 0.0;  // int_0^H u dY
    double u_wall = 0.0;
    double w_wall = 0.0;
};

// Solves the column twice on one factorization: unit pressure gradient without wall
// forcing, and wall forcing without pressure gradient.
std::pair<ColumnTraces, ColumnTraces> reference_column(const ModelParams& params, double H, int nY) {
    const double n2 = params.coupling();
    const double Rc = params.Rc();
    const double robin = 2.0 * n2 * params.beta() / Rc;  // w'(0) = -robin (u(0) - s1)
    const double slip = 2.0 / params.alpha();            // u'(0) = slip w(0)
    const double k = H / nY;
    const double k2 = k * k;
    const int n = 2 * nY;

    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(static_cast<std::size_t>(n) * 6);
    auto put = [&](int row, int col, double v) {
        if (col < n && v != 0.0) entries.emplace_back(row, col, v);
    };
    Eigen::VectorXd rhs_pressure = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd rhs_wall = Eigen::VectorXd::Zero(n);

    // Wall row, ghosts eliminated: u_{-1} = u_1 - 2k slip w_0, w_{-1} = w_1 + 2k robin (u_0 - s1).
    put(0, 0, 2.0 / k2 - 2.0 * n2 * robin);
    put(0, 2, -2.0 / k2);
    put(0, 1, 2.0 * slip / k);
    rhs_pressure(0) = -1.0;
    rhs_wall(0) = -2.0 * n2 * robin * params.s1();

    put(1, 1, 2.0 * Rc / k2 + 4.0 * n2 - 2.0 * n2 * slip);
    put(1, 3, -2.0 * Rc / k2);
    put(1, 0, -2.0 * Rc * robin / k);
    rhs_wall(1) = -2.0 * Rc * robin * params.s1() / k;

    for (int j = 1; j < nY; ++j) {
        const double Y = j * k;
        const double adv = params.M() / (H * H) * Y / (2.0 * k);
        const int ru = 2 * j;
        const int rw = 2 * j + 1;
        // -u'' + (M/H^2) Y u' + dp + 2N^2 w' = 0
        put(ru, ru - 2, -1.0 / k2 - adv);
        put(ru, ru, 2.0 / k2);
        put(ru, ru + 2, -1.0 / k2 + adv);
        put(ru, rw + 2, n2 / k);
        put(ru, rw - 2, -n2 / k);
        rhs_pressure(ru) = -1.0;
        // -R_c w'' + (R_c M/H^2) Y w' + 4N^2 w - 2N^2 u' = 0
        put(rw, rw - 2, -Rc / k2 - Rc * adv);
        put(rw, rw, 2.0 * Rc / k2 + 4.0 * n2);
        put(rw, rw + 2, -Rc / k2 + Rc * adv);
        put(rw, ru + 2, -n2 / k);
        put(rw, ru - 2, n2 / k);
    }

    Eigen::SparseMatrix<double> A(n, n);
    A.setFromTriplets(entries.begin(), entries.end());
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(A);
    if (lu.info() != Eigen::Success) throw SingularSystemError("reference column factorization failed");

    auto traces = [&](const Eigen::VectorXd& sol) {
        ColumnTraces t;
        double s = 0.5 * sol(0);
        for (int j = 1; j < nY; ++j) s += sol(2 * j);
        t.flux = s * k;
        t.u_wall = sol(0);
        t.w_wall = sol(1);
        return t;
    };
    return {traces(lu.solve(rhs_pressure)), traces(lu.solve(rhs_wall))};
}

}  // namespace

CoupledReference coupled_reference(const ModelParams& params, const std::function<double(double)>& h1,
                                   int columns, int nY) {
    if (columns < 2 || nY < 4) throw std::invalid_argument("reference grid too coarse");
    const double hx = 1.0 / columns;

    std::vector<ColumnTraces> unit(static_cast<std::size_t>(columns));
    std::vector<ColumnTraces> wall(static_cast<std::size_t>(columns));
    CoupledReference ref;
    ref.x_mid.resize(static_cast<std::size_t>(columns));
    for (int c = 0; c < columns; ++c) {
        const auto u = static_cast<std::size_t>(c);
        ref.x_mid[u] = (c + 0.5) * hx;
        std::tie(unit[u], wall[u]) = reference_column(params, h1(ref.x_mid[u]), nY);
    }

    // Flux = wall + dp * unit must be the same constant K in every column, and p(1) = p(0)
    // forces sum(dp) = 0.
    double a = 0.0;
    double b = 0.0;
    for (int c = 0; c < columns; ++c) {
        const auto u = static_cast<std::size_t>(c);
        a += wall[u].flux / unit[u].flux;
        b += 1.0 / unit[u].flux;
    }
    ref.flux = a / b;

    ref.dp.resize(static_cast<std::size_t>(columns));
    ref.u_wall.resize(ref.dp.size());
    ref.w_wall.resize(ref.dp.size());
    ref.x.resize(static_cast<std::size_t>(columns) + 1);
    ref.p.assign(ref.x.size(), 0.0);
    const double two_n2 = 2.0 * params.coupling();
    const double slip = 2.0 / params.alpha();
    double friction = 0.0;
    for (int c = 0; c < columns; ++c) {
        const auto u = static_cast<std::size_t>(c);
        const double dp = (ref.flux - wall[u].flux) / unit[u].flux;
        ref.dp[u] = dp;
        ref.u_wall[u] = wall[u].u_wall + dp * unit[u].u_wall;
        ref.w_wall[u] = wall[u].w_wall + dp * unit[u].w_wall;
        friction += (slip - two_n2) * ref.w_wall[u];  // du/dY(0) = slip w(0) holds exactly
        ref.x[u] = c * hx;
        ref.p[u + 1] = ref.p[u] + hx * dp;
    }
    ref.x.back() = 1.0;
    ref.p.back() = 0.0;
    ref.F = friction * hx;

    double load = 0.0;
    for (std::size_t i = 1; i + 1 < ref.p.size(); ++i) load += ref.p[i];
    ref.W = load * hx;
    return ref;
}

CoupledReference m0_reference(const ModelParams& params, const std::function<double(double)>& h1,
                              int columns, int nY) {
    if (params.M() != 0.0) throw std::invalid_argument("m0_reference requires M = 0");
    return coupled_reference(params, h1, columns, nY);
}

}  // namespace microlub::oracles
