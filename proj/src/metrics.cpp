#include "microlub/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace microlub {

double compute_load(std::span<const double> p, const HorizontalGrid& hgrid) {
    if (static_cast<int>(p.size()) != hgrid.node_count())
        throw std::invalid_argument("pressure does not match the horizontal grid");
    double s = 0.5 * (p.front() + p.back());
    for (std::size_t i = 1; i + 1 < p.size(); ++i) s += p[i];
    return s * hgrid.step();
}

double wall_derivative(const FemFunction& u1_col) {
    if (u1_col.grid().node_count() < 3) throw std::invalid_argument("wall stencil needs three nodes");
    return (-3.0 * u1_col[0] + 4.0 * u1_col[1] - u1_col[2]) / (2.0 * u1_col.grid().step());
}

double compute_friction(const SchemeState& state, const BearingGeometry& geometry, const ModelParams& params,
                        const HorizontalGrid& hgrid) {
    if (static_cast<int>(state.u1.size()) != hgrid.column_count() ||
        static_cast<int>(state.w2.size()) != hgrid.column_count())
        throw std::invalid_argument("state does not match the horizontal grid");
    const double two_n2 = 2.0 * params.coupling();
    double s = 0.0;
    for (int c = 0; c < hgrid.column_count(); ++c) {
        const auto k = static_cast<std::size_t>(c);
        const double h1 = geometry.h1(hgrid.midpoint(c));
        s += wall_derivative(state.u1[k]) / h1 - two_n2 * state.w2[k].at_wall();
    }
    return s * hgrid.step();
}

std::pair<double, double> compute_relative(const BearingReport& report, const BearingReport& baseline) {
    if (baseline.W == 0.0 || !std::isfinite(baseline.W) || baseline.c_f == 0.0 || !std::isfinite(baseline.c_f))
        throw std::domain_error("baseline report is degenerate (zero or non-finite load or friction coefficient)");
    return {report.W / baseline.W, report.c_f / baseline.c_f};
}

BearingReport make_report(const SolveResult& result, const BearingGeometry& geometry, const ModelParams& params,
                          const Grids& grids) {
    const auto& hg = grids.horizontal;
    BearingReport r;
    r.pressure_profile.reserve(result.state.p.size());
    for (int i = 0; i < hg.node_count(); ++i)
        r.pressure_profile.emplace_back(hg.node(i), result.state.p[static_cast<std::size_t>(i)]);
    r.W = compute_load(result.state.p, hg);
    r.F = compute_friction(result.state, geometry, params, hg);
    r.c_f = r.W != 0.0 ? r.F / r.W : std::numeric_limits<double>::quiet_NaN();
    r.stability = result.stability;
    r.converged = result.converged;
    r.iterations = result.state.iteration;
    return r;
}

double max_pressure(const BearingReport& report) {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& [x, p] : report.pressure_profile) m = std::max(m, p);
    return m;
}

}  // namespace microlub
