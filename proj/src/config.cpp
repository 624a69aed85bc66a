#include "microlub/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace microlub {

namespace {

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

double to_real(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    double x = 0.0;
    try {
        x = std::stod(v, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: '" + key + "' expects a number, got '" + v + "'");
    }
    if (used != v.size()) throw std::invalid_argument("config: '" + key + "' expects a number, got '" + v + "'");
    return x;
}

int to_int(const std::string& key, const std::string& v) {
    int x = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || ptr != v.data() + v.size())
        throw std::invalid_argument("config: '" + key + "' expects an integer, got '" + v + "'");
    return x;
}

bool to_bool(const std::string& key, std::string v) {
    std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
    if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
    if (v == "0" || v == "false" || v == "no" || v == "off") return false;
    throw std::invalid_argument("config: '" + key + "' expects a boolean, got '" + v + "'");
}

}  // namespace

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        out.push_back(to_real("list", item));
    }
    return out;
}

void apply_setting(RunConfig& c, const std::string& raw_key, const std::string& raw_value) {
    const std::string key = trim(raw_key);
    const std::string v = trim(raw_value);
    if (key == "N") c.N = to_real(key, v);
    else if (key == "Rc" || key == "R_c") c.Rc = to_real(key, v);
    else if (key == "nu_b_bar" || key == "nu_b") c.nu_b_bar = to_real(key, v);
    else if (key == "delta") c.delta = to_real(key, v);
    else if (key == "alpha") c.alpha = to_real(key, v);
    else if (key == "beta") c.beta = to_real(key, v);
    else if (key == "s1") c.s1 = to_real(key, v);
    else if (key == "M") c.M = to_real(key, v);
    else if (key == "slope" || key == "m") c.slope = to_real(key, v);
    else if (key == "n1") c.n1 = to_int(key, v);
    else if (key == "nZ") c.nZ = to_int(key, v);
    else if (key == "tol") c.tol = to_real(key, v);
    else if (key == "max_iter") c.max_iter = to_int(key, v);
    else if (key == "init") {
        if (v == "couette") c.init = InitialProfile::Couette;
        else if (v == "zero") c.init = InitialProfile::Zero;
        else throw std::invalid_argument("config: init must be 'couette' or 'zero'");
    } else if (key == "sweep_M") c.sweep_M = parse_list(v);
    else if (key == "sweep_N") c.sweep_N = parse_list(v);
    else if (key == "out") c.out_dir = v;
    else if (key == "workers") c.workers = to_int(key, v);
    else if (key == "verify") c.verify = to_bool(key, v);
    else throw std::invalid_argument("config: unknown key '" + key + "'");
}

RunConfig parse_config(const std::string& text, RunConfig base) {
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
        apply_setting(base, line.substr(0, eq), line.substr(eq + 1));
    }
    return base;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), std::move(base));
}

ModelParams RunConfig::params(double N_value, double M_value) const {
    if (alpha.has_value() != beta.has_value())
        throw std::invalid_argument("config: alpha and beta must be given together");
    if (alpha)
        return ModelParams::from_boundary_coefficients(N_value, Rc, *alpha, *beta, s1, M_value);
    return ModelParams::from_lubrication_params(N_value, Rc, nu_b_bar, delta, s1, M_value);
}

SolverOptions RunConfig::solver_options() const {
    SolverOptions o;
    o.tol = tol;
    o.max_iter = max_iter;
    o.init = init;
    return o;
}

void RunConfig::validate() const {
    if (n1 < 1 || nZ < 2) throw std::invalid_argument("config: need n1 >= 1 and nZ >= 2");
    if (!(tol > 0.0)) throw std::invalid_argument("config: tol must be positive");
    if (max_iter < 1) throw std::invalid_argument("config: max_iter must be >= 1");
    if (workers < 1) throw std::invalid_argument("config: workers must be >= 1");
    if (sweep_M.empty() || sweep_N.empty()) throw std::invalid_argument("config: sweep lists must be non-empty");
    for (double m : sweep_M)
        if (!(m >= 0.0 && m < kRoughnessLimit)) throw std::invalid_argument("config: every sweep M must lie in [0,2)");
    for (double n : sweep_N)
        if (!(n > 0.0 && n < 1.0)) throw std::invalid_argument("config: every sweep N must lie in (0,1)");
    (void)params();  // runs the parameter checks
    (void)geometry();
}

int effective_workers(const RunConfig& config) {
    if (const char* env = std::getenv("MICROLUB_WORKERS")) {
        const int w = to_int("MICROLUB_WORKERS", trim(env));
        if (w < 1) throw std::invalid_argument("MICROLUB_WORKERS must be >= 1");
        return w;
    }
    return config.workers;
}

}  // namespace microlub
