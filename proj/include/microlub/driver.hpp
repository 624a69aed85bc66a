#pragma once

/// @file driver.hpp
/// @brief Single runs, (N, M) sweeps and CSV/log output.
///
/// Files written into RunConfig::out_dir:
///   solve      pressure_<tag>.csv (x1,p), results.csv (appended), run.log (appended)
///   sweep      pressure_N<val>.csv (x1, one column per M), results_N<val>.csv
///              (M, W/W0, F, c_f/c_f0), run.log
///   potential  psi_M<val>.csv (Z, psi)
/// Numbers use 12 significant digits.

#include "microlub/config.hpp"
#include "microlub/metrics.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace microlub {

/// "%.12g" formatting used by every CSV.
std::string format_number(double v);
/// Short form for file names, e.g. 0.1 -> "0.1".
std::string format_tag(double v);

struct SingleRun {
    ModelParams params;
    SolveResult result;
    BearingReport report;
};

/// Solves one configuration and computes its metrics (no files).
SingleRun solve_case(const RunConfig& config, double N, double M, bool parallel = true);

/// Solves config.N / config.M, writes pressure_<tag>.csv, appends results.csv and run.log.
SingleRun run_single(const RunConfig& config, std::ostream& log);

struct SweepCell {
    double N = 0.0;
    double M = 0.0;
    std::optional<BearingReport> report;
    std::string error;  ///< set when the cell threw
};

struct SweepTable {
    std::vector<SweepCell> cells;  ///< ordered by (N, M) ascending

    [[nodiscard]] const SweepCell* find(double N, double M) const;
    [[nodiscard]] bool all_converged() const;
};

/// M values of the sweep, with the M = 0 baseline added when missing.
std::vector<double> sweep_roughness_values(const RunConfig& config);

/// Runs every (N, M) cell, fills W/W0 and c_f/c_f0 against each N's M = 0 cell and writes
/// the per-N CSVs. Failed cells are recorded and the sweep continues.
SweepTable run_sweep(const RunConfig& config, std::ostream& log);

/// Writes psi for roughness M on the configured vertical grid; returns its average.
double write_potential(const RunConfig& config, double M);

/// CSV writers (exposed for tests).
void write_pressure_csv(std::ostream& out, const BearingReport& report);
void write_sweep_pressure_csv(std::ostream& out, const SweepTable& table, double N, const std::vector<double>& Ms);
void write_sweep_results_csv(std::ostream& out, const SweepTable& table, double N, const std::vector<double>& Ms);
void write_run_log(std::ostream& out, const ModelParams& params, const SingleRun& run);

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Oracle cross-checks on the configured grids; prints one PASS/FAIL line each.
std::vector<CheckResult> run_verification(const RunConfig& config, std::ostream& out);

}  // namespace microlub
