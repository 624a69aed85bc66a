#include "microlub/driver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace microlub {

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string format_tag(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

namespace {

std::ofstream open_output(const std::filesystem::path& path, std::ios::openmode mode = std::ios::out) {
    std::ofstream out(path, mode);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

}  // namespace

SingleRun solve_case(const RunConfig& config, double N, double M, bool parallel) {
    const auto params = config.params(N, M);
    const auto geometry = config.geometry();
    const auto grids = config.grids();
    auto options = config.solver_options();
    options.parallel = parallel;
    auto result = solve(params, geometry, grids, options);
    auto report = make_report(result, geometry, params, grids);
    return SingleRun{params, std::move(result), std::move(report)};
}

void write_pressure_csv(std::ostream& out, const BearingReport& report) {
    out << "x1,p\n";
    for (const auto& [x, p] : report.pressure_profile) out << format_number(x) << ',' << format_number(p) << '\n';
}

void write_run_log(std::ostream& out, const ModelParams& params, const SingleRun& run) {
    const auto& s = run.report.stability;
    out << "run " << params.describe() << '\n';
    out << "  stability C=" << format_number(s.C) << " C(1+beta)=" << format_number(s.condition_value)
        << " satisfied=" << (s.satisfied ? "yes" : "no") << '\n';
    out << "  converged=" << (run.report.converged ? "yes" : "no") << " iterations=" << run.report.iterations
        << " W=" << format_number(run.report.W) << " F=" << format_number(run.report.F)
        << " c_f=" << format_number(run.report.c_f) << '\n';
    out << "  trace: iteration,update_norm,norm,max_flux_divergence\n";
    for (const auto& r : run.result.trace)
        out << "  " << r.iteration << ',' << format_number(r.update_norm) << ',' << format_number(r.norm) << ','
            << format_number(r.max_flux_divergence) << '\n';
}

SingleRun run_single(const RunConfig& config, std::ostream& log) {
    config.validate();
    auto run = solve_case(config, config.N, config.M);
    std::filesystem::create_directories(config.out_dir);

    const std::string tag = "N" + format_tag(config.N) + "_M" + format_tag(config.M);
    {
        auto out = open_output(config.out_dir / ("pressure_" + tag + ".csv"));
        write_pressure_csv(out, run.report);
    }
    {
        const auto path = config.out_dir / "results.csv";
        const bool fresh = !std::filesystem::exists(path);
        auto out = open_output(path, std::ios::app);
        if (fresh) out << "N,M,W,F,c_f,converged,iterations,C,C_1_plus_beta,stability_satisfied\n";
        const auto& r = run.report;
        out << format_number(config.N) << ',' << format_number(config.M) << ',' << format_number(r.W) << ','
            << format_number(r.F) << ',' << format_number(r.c_f) << ',' << (r.converged ? 1 : 0) << ','
            << r.iterations << ',' << format_number(r.stability.C) << ','
            << format_number(r.stability.condition_value) << ',' << (r.stability.satisfied ? 1 : 0) << '\n';
    }
    {
        auto out = open_output(config.out_dir / "run.log", std::ios::app);
        write_run_log(out, run.params, run);
    }
    write_run_log(log, run.params, run);
    return run;
}

// --- Sweeps ------------------------------------------------------------------

const SweepCell* SweepTable::find(double N, double M) const {
    for (const auto& c : cells)
        if (c.N == N && c.M == M) return &c;
    return nullptr;
}

bool SweepTable::all_converged() const {
    return std::all_of(cells.begin(), cells.end(),
                       [](const SweepCell& c) { return c.report && c.report->converged; });
}

std::vector<double> sweep_roughness_values(const RunConfig& config) {
    auto Ms = config.sweep_M;
    if (std::find(Ms.begin(), Ms.end(), 0.0) == Ms.end()) Ms.push_back(0.0);
    std::sort(Ms.begin(), Ms.end());
    Ms.erase(std::unique(Ms.begin(), Ms.end()), Ms.end());
    return Ms;
}

void write_sweep_pressure_csv(std::ostream& out, const SweepTable& table, double N, const std::vector<double>& Ms) {
    std::vector<const BearingReport*> columns;
    out << "x1";
    for (double M : Ms) {
        const auto* cell = table.find(N, M);
        if (!cell || !cell->report) continue;
        columns.push_back(&*cell->report);
        out << ",p_M" << format_tag(M);
    }
    out << '\n';
    if (columns.empty()) return;
    const auto rows = columns.front()->pressure_profile.size();
    for (std::size_t i = 0; i < rows; ++i) {
        out << format_number(columns.front()->pressure_profile[i].first);
        for (const auto* r : columns) out << ',' << format_number(r->pressure_profile[i].second);
        out << '\n';
    }
}

void write_sweep_results_csv(std::ostream& out, const SweepTable& table, double N, const std::vector<double>& Ms) {
    out << "M,W_rel,F,cf_rel\n";
    for (double M : Ms) {
        const auto* cell = table.find(N, M);
        if (!cell || !cell->report) continue;
        const auto& r = *cell->report;
        out << format_number(M) << ',' << (r.W_rel ? format_number(*r.W_rel) : "nan") << ',' << format_number(r.F)
            << ',' << (r.cf_rel ? format_number(*r.cf_rel) : "nan") << '\n';
    }
}

SweepTable run_sweep(const RunConfig& config, std::ostream& log) {
    config.validate();
    const auto Ms = sweep_roughness_values(config);
    auto Ns = config.sweep_N;
    std::sort(Ns.begin(), Ns.end());
    Ns.erase(std::unique(Ns.begin(), Ns.end()), Ns.end());

    SweepTable table;
    for (double N : Ns)
        for (double M : Ms) table.cells.push_back(SweepCell{N, M, std::nullopt, {}});

    std::vector<std::optional<SingleRun>> runs(table.cells.size());
    const int workers = std::max(1, std::min(effective_workers(config), static_cast<int>(table.cells.size())));
    const bool column_parallel = workers == 1;
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < table.cells.size(); i = next++) {
            auto& cell = table.cells[i];
            try {
                runs[i] = solve_case(config, cell.N, cell.M, column_parallel);
                cell.report = runs[i]->report;
            } catch (const std::exception& e) {
                cell.error = e.what();
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        for (int w = 1; w < workers; ++w) pool.emplace_back(work);
        work();
    }

    // Relative values against each N's M = 0 cell.
    for (auto& cell : table.cells) {
        if (!cell.report) continue;
        const auto* base = table.find(cell.N, 0.0);
        if (!base || !base->report) continue;
        try {
            const auto [w, cf] = compute_relative(*cell.report, *base->report);
            cell.report->W_rel = w;
            cell.report->cf_rel = cf;
        } catch (const std::domain_error& e) {
            cell.error = e.what();
        }
    }

    std::filesystem::create_directories(config.out_dir);
    auto run_log = open_output(config.out_dir / "run.log", std::ios::app);
    for (std::size_t i = 0; i < table.cells.size(); ++i) {
        const auto& cell = table.cells[i];
        if (runs[i]) {
            write_run_log(run_log, runs[i]->params, *runs[i]);
            const auto& r = *cell.report;
            log << "N=" << format_tag(cell.N) << " M=" << format_tag(cell.M) << " iterations=" << r.iterations
                << (r.converged ? "" : " (NOT CONVERGED)") << " W=" << format_number(r.W)
                << " c_f=" << format_number(r.c_f);
            if (r.W_rel) log << " W/W0=" << format_number(*r.W_rel) << " cf/cf0=" << format_number(*r.cf_rel);
            log << " C(1+beta)=" << format_number(r.stability.condition_value) << '\n';
        }
        if (!cell.error.empty()) {
            run_log << "cell N=" << format_tag(cell.N) << " M=" << format_tag(cell.M) << " failed: " << cell.error << '\n';
            log << "N=" << format_tag(cell.N) << " M=" << format_tag(cell.M) << " failed: " << cell.error << '\n';
        }
    }
    for (double N : Ns) {
        {
            auto out = open_output(config.out_dir / ("pressure_N" + format_tag(N) + ".csv"));
            write_sweep_pressure_csv(out, table, N, Ms);
        }
        auto out = open_output(config.out_dir / ("results_N" + format_tag(N) + ".csv"));
        write_sweep_results_csv(out, table, N, Ms);
    }
    return table;
}

double write_potential(const RunConfig& config, double M) {
    const VerticalGrid grid(config.nZ);
    const auto pot = solve_potential(M, grid);
    std::filesystem::create_directories(config.out_dir);
    auto out = open_output(config.out_dir / ("psi_M" + format_tag(M) + ".csv"));
    out << "Z,psi\n";
    for (int k = 0; k < grid.node_count(); ++k)
        out << format_number(grid.node(k)) << ',' << format_number(pot.psi[k]) << '\n';
    return pot.mean;
}

}  // namespace microlub
