#pragma once

/// @file config.hpp
/// @brief Run configuration: flat `key = value` files plus command-line overrides.
///
/// Recognized keys (defaults in brackets):
///   N [0.1]  Rc [0.01]  nu_b_bar [0.1]  delta [0.01]  alpha, beta (override nu_b_bar/delta)
///   s1 [1]  M [0]  slope [-0.5]  n1 [200]  nZ [400]  tol [1e-8]  max_iter [500]
///   init [couette|zero]  sweep_M [0,0.5,1]  sweep_N [0.1,0.2,0.3]  out [.]  workers [1]
///   verify [false]
/// Lines starting with '#' and blank lines are ignored.

#include "microlub/model.hpp"
#include "microlub/scheme.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace microlub {

struct RunConfig {
    double N = 0.1;
    double Rc = 0.01;
    double nu_b_bar = 0.1;
    double delta = 0.01;
    std::optional<double> alpha;
    std::optional<double> beta;
    double s1 = 1.0;
    double M = 0.0;
    double slope = -0.5;
    int n1 = 200;
    int nZ = 400;
    double tol = 1e-8;
    int max_iter = 500;
    InitialProfile init = InitialProfile::Couette;
    std::vector<double> sweep_M{0.0, 0.5, 1.0};
    std::vector<double> sweep_N{0.1, 0.2, 0.3};
    std::filesystem::path out_dir = ".";
    int workers = 1;
    bool verify = false;

    /// Parameters for coupling number N and roughness M; (alpha, beta) when both are given,
    /// otherwise converted from (nu_b_bar, delta) at this N.
    [[nodiscard]] ModelParams params(double N, double M) const;
    [[nodiscard]] ModelParams params() const { return params(N, M); }
    [[nodiscard]] BearingGeometry geometry() const { return BearingGeometry::linear(slope); }
    [[nodiscard]] Grids grids() const { return Grids(n1, nZ); }
    [[nodiscard]] SolverOptions solver_options() const;

    /// Throws std::invalid_argument on an inconsistent configuration.
    void validate() const;
};

/// Sets one key; throws std::invalid_argument for unknown keys or malformed values.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

/// Parses `key = value` text.
RunConfig parse_config(const std::string& text, RunConfig base = {});
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});

/// Comma-separated list of reals.
std::vector<double> parse_list(const std::string& text);

/// Worker count, honoring the MICROLUB_WORKERS environment variable.
int effective_workers(const RunConfig& config);

}  // namespace microlub
