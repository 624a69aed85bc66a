#include "microlub/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>

namespace microlub {

HorizontalGrid::HorizontalGrid(int n1) : n1_(n1) {
    if (n1 < 1) throw std::invalid_argument("horizontal grid needs n1 >= 1");
}

Potential solve_potential(double M, const VerticalGrid& grid) {
    auto sys = assemble_advected_laplacian(M, grid, 0.0);
    sys.rhs = load_constant(grid);
    auto psi = solve_tridiagonal(sys, grid);
    const double mean = integrate(psi);
    return Potential{std::move(psi), mean};
}

FemFunction solve_w_column(const FemFunction& u1_col, double h1_val, const ModelParams& params) {
    if (!(h1_val > 0.0)) throw std::invalid_argument("h1 must be positive");
    const auto& grid = u1_col.grid();
    const double n2 = params.coupling();
    const double Rc = params.Rc();
    // Whole equation divided by R_c.
    auto sys = assemble_advected_laplacian(params.M(), grid, 4.0 * n2 * h1_val * h1_val / Rc);
    add_gradient_load(sys.rhs, u1_col, 2.0 * n2 * h1_val / Rc);
    // -R_c w'(0) xi(0) from integration by parts, with R_c w'(0) = -2N^2 h1 beta (u(0) - s1).
    sys.rhs.front() += 2.0 * n2 * h1_val * params.beta() * (u1_col.at_wall() - params.s1()) / Rc;
    return solve_tridiagonal(sys, grid);
}

FemFunction solve_u_tilde_column(const FemFunction& w2_col, double h1_val, const ModelParams& params) {
    if (!(h1_val > 0.0)) throw std::invalid_argument("h1 must be positive");
    const auto& grid = w2_col.grid();
    auto sys = assemble_advected_laplacian(params.M(), grid, 0.0);
    add_gradient_load(sys.rhs, w2_col, -2.0 * params.coupling() * h1_val);
    // u'(0) xi(0) moves to the right-hand side with a minus sign.
    sys.rhs.front() -= (2.0 / params.alpha()) * h1_val * w2_col.at_wall();
    return solve_tridiagonal(sys, grid);
}

std::vector<double> column_fluxes(std::span<const FemFunction> columns, const BearingGeometry& geometry,
                                  const HorizontalGrid& hgrid) {
    if (static_cast<int>(columns.size()) != hgrid.column_count())
        throw std::invalid_argument("column count does not match the horizontal grid");
    std::vector<double> q(columns.size());
    for (int c = 0; c < hgrid.column_count(); ++c)
        q[static_cast<std::size_t>(c)] = geometry.h1(hgrid.midpoint(c)) * integrate(columns[static_cast<std::size_t>(c)]);
    return q;
}

std::vector<double> solve_reynolds(std::span<const FemFunction> u_tilde, double psi_bar,
                                   const BearingGeometry& geometry, const HorizontalGrid& hgrid) {
    if (!(psi_bar > 0.0)) throw std::invalid_argument("potential average must be positive");
    const auto q = column_fluxes(u_tilde, geometry, hgrid);
    const int n = hgrid.interior();
    const double hx = hgrid.step();

    std::vector<double> conductance(q.size());
    for (int c = 0; c < hgrid.column_count(); ++c) {
        const double h = geometry.h1(hgrid.midpoint(c));
        conductance[static_cast<std::size_t>(c)] = psi_bar * h * h * h / hx;
    }

    // Node i (1..n) sits between columns i-1 and i. Sign flipped for a positive diagonal.
    TridiagonalSystem sys(n);
    for (int i = 1; i <= n; ++i) {
        const auto r = static_cast<std::size_t>(i - 1);
        const double left = conductance[static_cast<std::size_t>(i - 1)];
        const double right = conductance[static_cast<std::size_t>(i)];
        sys.diag[r] = left + right;
        if (i > 1) sys.lower[r] = -left;
        if (i < n) sys.upper[r] = -right;
        sys.rhs[r] = q[static_cast<std::size_t>(i - 1)] - q[static_cast<std::size_t>(i)];
    }
    const auto interior = thomas_solve(sys);

    std::vector<double> p(static_cast<std::size_t>(hgrid.node_count()), 0.0);
    std::copy(interior.begin(), interior.end(), p.begin() + 1);
    return p;
}

std::vector<double> pressure_gradient(std::span<const double> p, const HorizontalGrid& hgrid) {
    if (static_cast<int>(p.size()) != hgrid.node_count())
        throw std::invalid_argument("pressure does not match the horizontal grid");
    std::vector<double> dp(static_cast<std::size_t>(hgrid.column_count()));
    for (std::size_t c = 0; c < dp.size(); ++c) dp[c] = (p[c + 1] - p[c]) / hgrid.step();
    return dp;
}

FemFunction correct_velocity(const FemFunction& u_tilde_col, double dp_mid, double h1_val,
                             const Potential& psi) {
    return u_tilde_col.axpy(-h1_val * h1_val * dp_mid, psi.psi);
}

double max_flux_divergence(std::span<const FemFunction> u1, const BearingGeometry& geometry,
                           const HorizontalGrid& hgrid) {
    const auto f = column_fluxes(u1, geometry, hgrid);
    double worst = 0.0;
    for (std::size_t i = 1; i < f.size(); ++i)
        worst = std::max(worst, std::abs(f[i] - f[i - 1]) / hgrid.step());
    return worst;
}

double field_norm(std::span<const FemFunction> columns, const HorizontalGrid& hgrid) {
    double s = 0.0;
    for (const auto& col : columns) s += vz_norm_squared(col);
    return std::sqrt(s * hgrid.step());
}

SchemeState initial_state(const ModelParams& params, const Grids& grids, InitialProfile profile) {
    const auto& vg = grids.vertical;
    const double s1 = params.s1();
    const FemFunction start = profile == InitialProfile::Couette
                                  ? FemFunction::interpolate(vg, [&](double Z) { return s1 * (1.0 - Z); })
                                  : FemFunction::zero(vg);
    SchemeState state;
    const auto cols = static_cast<std::size_t>(grids.horizontal.column_count());
    state.u1.assign(cols, start);
    state.w2.assign(cols, FemFunction::zero(vg));
    state.p.assign(static_cast<std::size_t>(grids.horizontal.node_count()), 0.0);
    return state;
}

namespace {

// Runs body(c) for every column; rethrows the first failure after the loop.
template <class Body>
void for_each_column(int count, bool parallel, Body&& body) {
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(static) if (parallel)
    for (int c = 0; c < count; ++c) {
        try {
            body(c);
        } catch (...) {
            errors[static_cast<std::size_t>(c)] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

SchemeState sweep(const SchemeState& state, const ModelParams& params, const BearingGeometry& geometry,
                  const Grids& grids, const Potential& psi, bool parallel) {
    const auto& hg = grids.horizontal;
    const int cols = hg.column_count();
    if (static_cast<int>(state.u1.size()) != cols)
        throw std::invalid_argument("state does not match the horizontal grid");

    std::vector<double> h1(static_cast<std::size_t>(cols));
    for (int c = 0; c < cols; ++c) h1[static_cast<std::size_t>(c)] = geometry.h1(hg.midpoint(c));

    const FemFunction blank = FemFunction::zero(grids.vertical);
    SchemeState next;
    next.w2.assign(static_cast<std::size_t>(cols), blank);
    std::vector<FemFunction> u_tilde(static_cast<std::size_t>(cols), blank);

    for_each_column(cols, parallel, [&](int c) {
        const auto k = static_cast<std::size_t>(c);
        next.w2[k] = solve_w_column(state.u1[k], h1[k], params);
        u_tilde[k] = solve_u_tilde_column(next.w2[k], h1[k], params);
    });

    next.p = solve_reynolds(u_tilde, psi.mean, geometry, hg);
    const auto dp = pressure_gradient(next.p, hg);

    next.u1.assign(static_cast<std::size_t>(cols), blank);
    std::vector<double> change(static_cast<std::size_t>(cols));
    for_each_column(cols, parallel, [&](int c) {
        const auto k = static_cast<std::size_t>(c);
        next.u1[k] = correct_velocity(u_tilde[k], dp[k], h1[k], psi);
        change[k] = vz_norm_squared(next.u1[k].axpy(-1.0, state.u1[k]));
    });

    // Fixed summation order keeps the result independent of the thread count.
    double sum = 0.0;
    for (double v : change) sum += v;
    next.last_update_norm = std::sqrt(sum * hg.step());
    next.iteration = state.iteration + 1;
    return next;
}

}  // namespace

SchemeState iterate(const SchemeState& state, const ModelParams& params, const BearingGeometry& geometry,
                    const Grids& grids, const Potential& psi) {
    return sweep(state, params, geometry, grids, psi, true);
}

SchemeState iterate_serial(const SchemeState& state, const ModelParams& params,
                           const BearingGeometry& geometry, const Grids& grids, const Potential& psi) {
    return sweep(state, params, geometry, grids, psi, false);
}

StabilityReport stability_constant(const ModelParams& params, double sup_h1, double inf_h1,
                                   double psi_vz_norm, double psi_bar) {
    if (!(inf_h1 > 0.0) || !(psi_bar > 0.0))
        throw std::invalid_argument("stability constant needs inf h1 > 0 and psī > 0");
    const double n2 = params.coupling();
    const double coercivity = 1.0 - params.M() / 2.0;
    const double column_gain = 2.0 * n2 * (2.0 * n2 + 2.0 / params.alpha()) / (coercivity * coercivity);
    const double ratio = sup_h1 / inf_h1;
    const double pressure_gain = 1.0 + std::numbers::sqrt2 * (psi_vz_norm / psi_bar) * ratio * ratio * ratio;

    StabilityReport r;
    r.C = std::numbers::sqrt2 * column_gain * sup_h1 * sup_h1 * pressure_gain;
    r.condition_value = r.C * (1.0 + params.beta());
    r.satisfied = r.condition_value <= 1.0;
    return r;
}

StabilityReport stability_constant(const ModelParams& params, const BearingGeometry& geometry,
                                   const Potential& psi, const HorizontalGrid& hgrid) {
    double sup_h1 = 0.0;
    double inf_h1 = std::numeric_limits<double>::infinity();
    for (int i = 0; i < hgrid.node_count(); ++i) {
        const double h = geometry.h1(hgrid.node(i));
        sup_h1 = std::max(sup_h1, h);
        inf_h1 = std::min(inf_h1, h);
    }
    return stability_constant(params, sup_h1, inf_h1, vz_norm(psi.psi), psi.mean);
}

SolveResult solve(const ModelParams& params, const BearingGeometry& geometry, const Grids& grids,
                  const SolverOptions& options) {
    if (!(options.tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    if (options.max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");

    SolveResult result{initial_state(params, grids, options.init), solve_potential(params.M(), grids.vertical),
                       {}, {}, false};
    result.stability = stability_constant(params, geometry, result.potential, grids.horizontal);

    double norm = field_norm(result.state.u1, grids.horizontal);
    for (int n = 0; n < options.max_iter; ++n) {
        auto next = options.parallel ? iterate(result.state, params, geometry, grids, result.potential)
                                     : iterate_serial(result.state, params, geometry, grids, result.potential);
        IterationRecord rec;
        rec.iteration = next.iteration;
        rec.update_norm = next.last_update_norm;
        rec.previous_norm = norm;
        rec.norm = field_norm(next.u1, grids.horizontal);
        rec.max_flux_divergence = max_flux_divergence(next.u1, geometry, grids.horizontal);
        result.trace.push_back(rec);

        result.state = std::move(next);
        const bool done = rec.update_norm <= options.tol * (1.0 + norm);
        norm = rec.norm;
        if (!std::isfinite(rec.update_norm)) break;
        if (done) {
            result.converged = true;
            break;
        }
    }
    return result;
}

}  // namespace microlub
