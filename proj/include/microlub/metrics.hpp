#pragma once

/// @file metrics.hpp
/// @brief Bearing performance from a converged state: load, friction force, friction coefficient.

#include "microlub/scheme.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace microlub {

struct BearingReport {
    std::vector<std::pair<double, double>> pressure_profile;  ///< (x1, p) on pressure nodes
    double W = 0.0;
    double F = 0.0;
    double c_f = 0.0;  ///< F / W; NaN when W == 0
    std::optional<double> W_rel;
    std::optional<double> cf_rel;
    StabilityReport stability;
    bool converged = false;
    int iterations = 0;
};

/// W = int_0^1 p dx1 (trapezoid over the pressure nodes).
double compute_load(std::span<const double> p, const HorizontalGrid& hgrid);

/// du1/dZ at Z = 0 by the second-order one-sided stencil (-3 u0 + 4 u1 - u2) / (2 h_Z).
double wall_derivative(const FemFunction& u1_col);

/// F = int_0^1 (du1/dY(x1,0) - 2N^2 w2(x1,0)) dx1 with du1/dY = (1/h1) du1/dZ,
/// midpoint rule over the column midpoints.
double compute_friction(const SchemeState& state, const BearingGeometry& geometry, const ModelParams& params,
                        const HorizontalGrid& hgrid);

/// (W / W0, c_f / c_f0). Throws std::domain_error for a degenerate baseline.
std::pair<double, double> compute_relative(const BearingReport& report, const BearingReport& baseline);

BearingReport make_report(const SolveResult& result, const BearingGeometry& geometry, const ModelParams& params,
                          const Grids& grids);

[[nodiscard]] double max_pressure(const BearingReport& report);

}  // namespace microlub
