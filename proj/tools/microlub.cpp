// Command-line driver: solve | sweep | verify | potential.

#include "microlub/driver.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <map>
#include <string>

namespace {

enum ExitCode { kOk = 0, kNotConverged = 1, kBadConfig = 2, kVerifyFailed = 3 };

// Options shared by every subcommand; each maps to a config key.
void add_overrides(CLI::App& cmd, std::map<std::string, std::string>& overrides, std::string& config_path) {
    cmd.add_option("--config,-c", config_path, "key = value configuration file");
    const std::pair<const char*, const char*> keys[] = {
        {"N", "coupling number N in (0,1)"},
        {"Rc", "microrotation length parameter R_c"},
        {"nu_b_bar", "boundary viscosity ratio (used with delta)"},
        {"delta", "slippage ratio R_c/(2 N^2 beta)"},
        {"alpha", "boundary microrotation coefficient (with beta)"},
        {"beta", "wall slippage coefficient (with alpha)"},
        {"s1", "wall speed"},
        {"M", "roughness coefficient in [0,2)"},
        {"slope", "inclination m of h1 = 1 + m x1"},
        {"n1", "horizontal interval parameter"},
        {"nZ", "vertical interval parameter"},
        {"tol", "relative update tolerance"},
        {"max_iter", "maximum number of sweeps"},
        {"init", "initial velocity: couette | zero"},
        {"sweep_M", "comma-separated M values"},
        {"sweep_N", "comma-separated N values"},
        {"out", "output directory"},
        {"workers", "concurrent sweep cells"},
    };
    for (const auto& [key, help] : keys) {
        std::string flag = std::string("--") + key;
        std::string alias = flag;
        std::replace(alias.begin(), alias.end(), '_', '-');
        const std::string names = alias == flag ? flag : flag + "," + alias;
        cmd.add_option_function<std::string>(
            names, [&overrides, k = std::string(key)](const std::string& v) { overrides[k] = v; }, help);
    }
}

microlub::RunConfig build_config(const std::string& path, const std::map<std::string, std::string>& overrides) {
    microlub::RunConfig config;
    if (!path.empty()) config = microlub::load_config(path);
    for (const auto& [k, v] : overrides) microlub::apply_setting(config, k, v);
    config.validate();
    return config;
}

bool verify_ok(const microlub::RunConfig& config) {
    const auto checks = microlub::run_verification(config, std::cout);
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Micropolar slider-bearing lubrication solver"};
    app.require_subcommand(1);

    std::map<std::string, std::string> overrides;
    std::string config_path;
    bool verify_first = false;

    auto* solve_cmd = app.add_subcommand("solve", "solve one (N, M) case");
    auto* sweep_cmd = app.add_subcommand("sweep", "run the (N, M) sweep and write figure tables");
    auto* verify_cmd = app.add_subcommand("verify", "run oracle cross-checks");
    auto* potential_cmd = app.add_subcommand("potential", "write the potential psi for the configured M");
    for (auto* cmd : {solve_cmd, sweep_cmd, verify_cmd, potential_cmd}) add_overrides(*cmd, overrides, config_path);
    solve_cmd->add_flag("--verify", verify_first, "run oracle cross-checks before solving");
    sweep_cmd->add_flag("--verify", verify_first, "run oracle cross-checks before sweeping");

    CLI11_PARSE(app, argc, argv);

    microlub::RunConfig config;
    try {
        config = build_config(config_path, overrides);
    } catch (const std::exception& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kBadConfig;
    }

    try {
        if (verify_cmd->parsed()) return verify_ok(config) ? kOk : kVerifyFailed;
        if ((verify_first || config.verify) && !verify_ok(config)) return kVerifyFailed;

        if (potential_cmd->parsed()) {
            const double mean = microlub::write_potential(config, config.M);
            std::cout << "psi mean " << microlub::format_number(mean) << '\n';
            return kOk;
        }
        if (solve_cmd->parsed()) {
            const auto params = config.params();
            if (params.near_coercivity_limit())
                std::cerr << "warning: M = " << params.M() << " is close to the coercivity limit M = 2\n";
            const auto run = microlub::run_single(config, std::cout);
            if (!run.report.stability.satisfied)
                std::cerr << "warning: stability condition C(1+beta) <= 1 not met (C(1+beta) = "
                          << microlub::format_number(run.report.stability.condition_value) << ")\n";
            return run.report.converged ? kOk : kNotConverged;
        }
        if (sweep_cmd->parsed()) {
            const auto table = microlub::run_sweep(config, std::cout);
            return table.all_converged() ? kOk : kNotConverged;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kBadConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNotConverged;
    }
    return kOk;
}
