#include "microlub/model.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <mutex>
#include <numbers>

namespace microlub {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

// FFTW planning is not thread-safe; execution is.
std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

// Half-spectrum of real periodic samples (unnormalized, FFTW convention).
std::vector<std::complex<double>> real_spectrum(std::span<const double> samples) {
    const int n = static_cast<int>(samples.size());
    std::vector<double> in(samples.begin(), samples.end());
    std::vector<std::complex<double>> out(static_cast<std::size_t>(n / 2 + 1));
    fftw_plan plan;
    {
        std::lock_guard lock(fftw_planner_mutex());
        plan = fftw_plan_dft_r2c_1d(n, in.data(), reinterpret_cast<fftw_complex*>(out.data()),
                                    FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
    return out;
}

}  // namespace

void require_admissible_roughness(double M) {
    if (!std::isfinite(M) || M < 0.0)
        throw std::invalid_argument("roughness coefficient M must be finite and >= 0");
    if (M >= kRoughnessLimit)
        throw StabilityDomainError("roughness coefficient M must be < 2 (coercivity factor 1 - M/2 vanishes)");
}

// --- ModelParams -------------------------------------------------------------

ModelParams::ModelParams(double N, double Rc, double alpha, double beta, double s1, double M)
    : N_(N), Rc_(Rc), alpha_(alpha), beta_(beta), s1_(s1), M_(M) {
    require(N > 0.0 && N < 1.0, "coupling number N must lie in (0,1)");
    require(Rc > 0.0 && std::isfinite(Rc), "R_c must be positive");
    require(alpha > 0.0 && std::isfinite(alpha), "alpha must be positive");
    require(beta >= 0.0 && std::isfinite(beta), "beta must be finite and >= 0");
    require(std::isfinite(s1), "wall speed s1 must be finite");
    require_admissible_roughness(M);
}

ModelParams ModelParams::from_boundary_coefficients(double N, double Rc, double alpha,
                                                    double beta, double s1, double M) {
    return ModelParams(N, Rc, alpha, beta, s1, M);
}

ModelParams ModelParams::from_lubrication_params(double N, double Rc, double nu_b_bar,
                                                 double delta, double s1, double M) {
    require(N > 0.0 && N < 1.0, "coupling number N must lie in (0,1)");
    require(delta > 0.0 && std::isfinite(delta), "delta must be positive");
    const double n2 = N * N;
    const double alpha = (1.0 - nu_b_bar * (1.0 - n2)) / n2;
    const double beta = Rc / (2.0 * n2 * delta);
    return ModelParams(N, Rc, alpha, beta, s1, M);
}

DerivedParams ModelParams::derived() const {
    const double n2 = N_ * N_;
    DerivedParams d;
    d.nu_b_bar = (1.0 - alpha_ * n2) / (1.0 - n2);
    d.delta = beta_ > 0.0 ? Rc_ / (2.0 * n2 * beta_) : std::numeric_limits<double>::infinity();
    return d;
}

ModelParams ModelParams::with_roughness(double M) const {
    return ModelParams(N_, Rc_, alpha_, beta_, s1_, M);
}

ModelParams ModelParams::with_wall_speed(double s1) const {
    return ModelParams(N_, Rc_, alpha_, beta_, s1, M_);
}

std::string ModelParams::describe() const {
    const auto d = derived();
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "N=%.12g Rc=%.12g alpha=%.12g beta=%.12g nu_b_bar=%.12g delta=%.12g s1=%.12g M=%.12g",
                  N_, Rc_, alpha_, beta_, d.nu_b_bar, d.delta, s1_, M_);
    return buf;
}

// --- RoughnessProfile --------------------------------------------------------

RoughnessProfile RoughnessProfile::zero() {
    return closed_form([](double) { return 0.0; }, [](double) { return 0.0; });
}

RoughnessProfile RoughnessProfile::closed_form(Evaluator value, Evaluator derivative) {
    require(static_cast<bool>(value), "closed-form roughness needs an evaluator");
    RoughnessProfile p;
    p.value_ = std::move(value);
    p.derivative_ = std::move(derivative);
    return p;
}

RoughnessProfile RoughnessProfile::sampled(std::vector<double> samples) {
    require(samples.size() >= 2, "sampled roughness needs at least 2 samples");
    for (double v : samples) require(std::isfinite(v), "roughness samples must be finite");
    RoughnessProfile p;
    p.samples_ = std::move(samples);
    return p;
}

RoughnessProfile RoughnessProfile::sinusoid(double amplitude, double shift) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    return closed_form(
        [=](double X) { return amplitude * std::sin(two_pi * (X + shift)); },
        [=](double X) { return two_pi * amplitude * std::cos(two_pi * (X + shift)); });
}

double RoughnessProfile::operator()(double X) const {
    if (!is_sampled()) return value_(X);

    // Trigonometric interpolation through the samples.
    const int n = static_cast<int>(samples_.size());
    const auto c = real_spectrum(samples_);
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double sum = c[0].real();
    const int kmax = (n % 2 == 0) ? n / 2 - 1 : n / 2;
    for (int k = 1; k <= kmax; ++k) {
        const std::complex<double> e = std::polar(1.0, two_pi * k * X);
        sum += 2.0 * (c[static_cast<std::size_t>(k)] * e).real();
    }
    if (n % 2 == 0) sum += c[static_cast<std::size_t>(n / 2)].real() * std::cos(std::numbers::pi * n * X);
    return sum / n;
}

std::vector<double> RoughnessProfile::sample(int n) const {
    require(n >= 2, "sampling needs at least 2 nodes");
    if (is_sampled() && static_cast<int>(samples_.size()) == n) return samples_;
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = (*this)(static_cast<double>(k) / n);
    return out;
}

std::vector<double> RoughnessProfile::sample_derivative(int n) const {
    require(n >= 2, "sampling needs at least 2 nodes");
    if (!is_sampled() && derivative_) {
        std::vector<double> out(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = derivative_(static_cast<double>(k) / n);
        return out;
    }
    if (is_sampled()) {
        // Differentiate on the native grid, then resample the derivative if needed.
        auto d = spectral_derivative(samples_);
        if (static_cast<int>(d.size()) == n) return d;
        return RoughnessProfile::sampled(std::move(d)).sample(n);
    }
    return spectral_derivative(sample(n));
}

RoughnessProfile RoughnessProfile::scaled(double factor) const {
    if (is_sampled()) {
        auto s = samples_;
        for (double& v : s) v *= factor;
        return sampled(std::move(s));
    }
    Evaluator v = [f = value_, factor](double X) { return factor * f(X); };
    Evaluator d;
    if (derivative_) d = [g = derivative_, factor](double X) { return factor * g(X); };
    return closed_form(std::move(v), std::move(d));
}

std::vector<double> spectral_derivative(std::span<const double> samples) {
    const int n = static_cast<int>(samples.size());
    require(n >= 2, "spectral derivative needs at least 2 samples");
    auto c = real_spectrum(samples);
    constexpr double two_pi = 2.0 * std::numbers::pi;
    for (int k = 0; k < static_cast<int>(c.size()); ++k) {
        // The Nyquist mode has no well-defined real derivative.
        if (n % 2 == 0 && k == n / 2) {
            c[static_cast<std::size_t>(k)] = 0.0;
            continue;
        }
        c[static_cast<std::size_t>(k)] *= std::complex<double>(0.0, two_pi * k);
    }
    std::vector<double> out(static_cast<std::size_t>(n));
    fftw_plan plan;
    {
        std::lock_guard lock(fftw_planner_mutex());
        plan = fftw_plan_dft_c2r_1d(n, reinterpret_cast<fftw_complex*>(c.data()), out.data(),
                                    FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard lock(fftw_planner_mutex());
        fftw_destroy_plan(plan);
    }
    for (double& v : out) v /= n;
    return out;
}

double compute_roughness_coefficient(const RoughnessProfile& h2, const QuadratureSpec& quad) {
    require(quad.nodes >= 2, "quadrature needs at least 2 nodes");
    const int n = quad.nodes;
    const auto values = h2.sample(n);
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= n;
    if (std::abs(mean) > quad.mean_tolerance)
        throw std::invalid_argument("roughness profile must have zero average");

    // Trapezoid on a periodic grid: every node carries weight 1/n.
    const auto slope = h2.sample_derivative(n);
    double M = 0.0;
    for (double d : slope) M += d * d;
    M /= n;
    require_admissible_roughness(M);
    return M;
}

// --- BearingGeometry ---------------------------------------------------------

BearingGeometry::BearingGeometry(std::function<double(double)> h1, double slope, RoughnessProfile h2)
    : h1_(std::move(h1)), slope_(slope), h2_(std::move(h2)) {
    require(static_cast<bool>(h1_), "h1 evaluator missing");
    constexpr int probes = 4096;
    for (int i = 0; i <= probes; ++i) {
        const double v = h1_(static_cast<double>(i) / probes);
        require(std::isfinite(v) && v > 0.0, "gap h1 must stay positive on [0,1]");
    }
}

BearingGeometry BearingGeometry::linear(double slope_m, std::optional<RoughnessProfile> h2) {
    require(1.0 + slope_m > 0.0, "linear gap 1 + m x1 must stay positive on [0,1]");
    return BearingGeometry([slope_m](double x1) { return 1.0 + slope_m * x1; }, slope_m,
                           h2 ? std::move(*h2) : RoughnessProfile::zero());
}

BearingGeometry BearingGeometry::general(std::function<double(double)> h1, double slope_m,
                                         std::optional<RoughnessProfile> h2) {
    return BearingGeometry(std::move(h1), slope_m, h2 ? std::move(*h2) : RoughnessProfile::zero());
}

double BearingGeometry::gap(double eps, double x1) const {
    require(eps > 0.0, "eps must be positive");
    require(x1 >= 0.0 && x1 <= 1.0, "x1 must lie in [0,1]");
    return eps * h1_(x1) + eps * eps * h2_(x1 / (eps * eps));
}

double gap_function(const BearingGeometry& geometry, double eps, double x1) {
    return geometry.gap(eps, x1);
}

}  // namespace microlub
