#pragma once

/// @file model.hpp
/// @brief Dimensionless parameters, bearing geometry and the roughness coefficient.
///
/// All quantities live in the rescaled setting: the film occupies
/// 0 < x1 < 1, 0 < Z < 1 after the vertical coordinate has been divided by
/// the leading-order gap h1(x1).

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace microlub {

/// Thrown when a parameter leaves the region where the column problems are coercive.
class StabilityDomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Coercivity of the advected Laplacian degenerates at M = 2.
inline constexpr double kRoughnessLimit = 2.0;
inline constexpr double kRoughnessWarnLevel = 1.5;

/// Throws StabilityDomainError unless 0 <= M < 2.
void require_admissible_roughness(double M);

/// Lubrication-style parameters: (1 - alpha N^2)/(1 - N^2) and R_c / (2 N^2 beta).
struct DerivedParams {
    double nu_b_bar = 0.0;
    double delta = 0.0;
};

/// Physics of the micropolar film. Immutable once built; use the factories.
class ModelParams {
public:
    /// Direct entry of the boundary-microrotation coefficients.
    static ModelParams from_boundary_coefficients(double N, double Rc, double alpha,
                                                  double beta, double s1, double M);

    /// Entry through (nu_b_bar, delta); beta = R_c / (2 N^2 delta) must stay finite.
    static ModelParams from_lubrication_params(double N, double Rc, double nu_b_bar,
                                               double delta, double s1, double M);

    [[nodiscard]] double N() const { return N_; }
    [[nodiscard]] double Rc() const { return Rc_; }
    [[nodiscard]] double alpha() const { return alpha_; }
    [[nodiscard]] double beta() const { return beta_; }
    [[nodiscard]] double s1() const { return s1_; }
    [[nodiscard]] double M() const { return M_; }

    [[nodiscard]] double coupling() const { return N_ * N_; }
    [[nodiscard]] DerivedParams derived() const;

    /// Same physics with another roughness coefficient.
    [[nodiscard]] ModelParams with_roughness(double M) const;
    [[nodiscard]] ModelParams with_wall_speed(double s1) const;

    /// True above the warning level M > 1.5 (still admissible).
    [[nodiscard]] bool near_coercivity_limit() const { return M_ > kRoughnessWarnLevel; }

    [[nodiscard]] std::string describe() const;

private:
    ModelParams(double N, double Rc, double alpha, double beta, double s1, double M);

    double N_;
    double Rc_;
    double alpha_;
    double beta_;
    double s1_;
    double M_;
};

/// Periodic (period 1) roughness profile h2(X).
///
/// Either a closed-form evaluator (optionally with its derivative) or samples on the
/// uniform periodic grid X_k = k/n, k = 0..n-1. Without an analytic derivative the
/// profile is differentiated spectrally.
class RoughnessProfile {
public:
    using Evaluator = std::function<double(double)>;

    static RoughnessProfile zero();
    static RoughnessProfile closed_form(Evaluator value, Evaluator derivative = {});
    static RoughnessProfile sampled(std::vector<double> samples);
    /// a * sin(2 pi (X + shift)).
    static RoughnessProfile sinusoid(double amplitude, double shift = 0.0);

    /// Value at any real X (periodic extension; sampled profiles use trigonometric interpolation).
    [[nodiscard]] double operator()(double X) const;

    /// Samples of h2 and dh2/dX on X_k = k/n.
    [[nodiscard]] std::vector<double> sample(int n) const;
    [[nodiscard]] std::vector<double> sample_derivative(int n) const;

    [[nodiscard]] bool is_sampled() const { return !samples_.empty(); }

    /// Multiplies the profile by a constant.
    [[nodiscard]] RoughnessProfile scaled(double factor) const;

private:
    RoughnessProfile() = default;

    Evaluator value_;
    Evaluator derivative_;
    std::vector<double> samples_;
};

/// Derivative of periodic samples by FFT; returns dh/dX on the same grid.
std::vector<double> spectral_derivative(std::span<const double> samples);

struct QuadratureSpec {
    int nodes = 1024;
    double mean_tolerance = 1e-9;
};

/// M = integral over one period of |dh2/dX|^2 (composite trapezoid on the periodic grid).
///
/// The torus form of the coefficient reduces to this one-dimensional integral when h2
/// does not depend on the second fast variable. Throws std::invalid_argument for a
/// profile with nonzero mean and StabilityDomainError when M >= 2.
double compute_roughness_coefficient(const RoughnessProfile& h2, const QuadratureSpec& quad = {});

/// Leading-order gap h1 plus roughness profile.
class BearingGeometry {
public:
    /// h1(x1) = 1 + m x1. Requires inf h1 > 0 on [0,1].
    static BearingGeometry linear(double slope_m,
                                  std::optional<RoughnessProfile> h2 = std::nullopt);
    /// Arbitrary positive h1; slope_m is kept for reporting only.
    static BearingGeometry general(std::function<double(double)> h1, double slope_m,
                                   std::optional<RoughnessProfile> h2 = std::nullopt);

    [[nodiscard]] double h1(double x1) const { return h1_(x1); }
    [[nodiscard]] double slope() const { return slope_; }
    [[nodiscard]] const RoughnessProfile& h2() const { return h2_; }

    /// Full gap eps h1(x1) + eps^2 h2(x1 / eps^2); output-only helper.
    [[nodiscard]] double gap(double eps, double x1) const;

private:
    BearingGeometry(std::function<double(double)> h1, double slope, RoughnessProfile h2);

    std::function<double(double)> h1_;
    double slope_;
    RoughnessProfile h2_;
};

double gap_function(const BearingGeometry& geometry, double eps, double x1);

}  // namespace microlub
