#include "microlub/metrics.hpp"
#include "microlub/oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace microlub {
namespace {

ModelParams slider_params(double M = 0.0, double N = 0.1) {
    return ModelParams::from_lubrication_params(N, 0.01, 0.1, 0.01, 1.0, M);
}

const BearingGeometry& slider() {
    static const BearingGeometry g = BearingGeometry::linear(-0.5);
    return g;
}

BearingReport report_for(double M, double N, const Grids& grids) {
    const auto params = slider_params(M, N);
    const auto r = solve(params, slider(), grids);
    return make_report(r, slider(), params, grids);
}

TEST(Load, TrapezoidOfPressure) {
    const HorizontalGrid hg(3);
    EXPECT_DOUBLE_EQ(compute_load(std::vector<double>{0.0, 1.0, 1.0, 1.0, 0.0}, hg), 0.75);
    EXPECT_EQ(compute_load(std::vector<double>(5, 0.0), hg), 0.0);
    EXPECT_THROW(compute_load(std::vector<double>(4, 0.0), hg), std::invalid_argument);
    // x (1 - x) integrates to 1/6 - h^2/6 under the trapezoid rule
    const HorizontalGrid fine(99);
    std::vector<double> p(static_cast<std::size_t>(fine.node_count()));
    for (int i = 0; i < fine.node_count(); ++i) p[static_cast<std::size_t>(i)] = fine.node(i) * (1.0 - fine.node(i));
    const double h = fine.step();
    EXPECT_NEAR(compute_load(p, fine), 1.0 / 6.0 - h * h / 6.0, 1e-15);
}

TEST(WallDerivative, ExactForQuadratics) {
    const VerticalGrid g(9);
    const auto f = FemFunction::interpolate(g, [](double Z) { return 1.0 - 3.0 * Z + 2.0 * Z * Z; });
    EXPECT_NEAR(wall_derivative(f), -3.0, 1e-12);
    EXPECT_NEAR(wall_derivative(FemFunction::interpolate(g, [](double Z) { return 1.0 - Z; })), -1.0, 1e-12);
}

TEST(Friction, CouetteFlowOverUniformGap) {
    // u = 1 - Z, w = 0 in every column: F = int -1/h1 = -1 for h1 = 1.
    const auto params = slider_params();
    const Grids grids(7, 10);
    auto state = initial_state(params, grids, InitialProfile::Couette);
    EXPECT_NEAR(compute_friction(state, BearingGeometry::linear(0.0), params, grids.horizontal), -1.0, 1e-12);
    // With h1 = 1 - x/2 the midpoint rule approximates -2 ln 2.
    const Grids fine(399, 10);
    state = initial_state(params, fine, InitialProfile::Couette);
    EXPECT_NEAR(compute_friction(state, slider(), params, fine.horizontal), -2.0 * std::log(2.0), 1e-5);
}

TEST(Friction, MatchesCoupledReferenceForSmoothWall) {
    const auto params = slider_params();
    const Grids grids(40, 160);
    const auto report = report_for(0.0, 0.1, grids);
    const auto ref = oracles::m0_reference(params, [](double x) { return slider().h1(x); }, 160, 800);
    EXPECT_NEAR(report.F, ref.F, 1e-3 * std::abs(ref.F));
    EXPECT_NEAR(report.W, ref.W, 1e-3 * ref.W);
}

TEST(Relative, RatiosAndDegenerateBaseline) {
    BearingReport base;
    base.W = 2.0;
    base.F = -1.0;
    base.c_f = -0.5;
    BearingReport r;
    r.W = 3.0;
    r.F = -1.2;
    r.c_f = -0.4;
    const auto [w, cf] = compute_relative(r, base);
    EXPECT_DOUBLE_EQ(w, 1.5);
    EXPECT_DOUBLE_EQ(cf, 0.8);
    EXPECT_EQ(compute_relative(base, base), std::make_pair(1.0, 1.0));
    base.W = 0.0;
    EXPECT_THROW(compute_relative(r, base), std::domain_error);
}

TEST(Report, InvariantsOfSolvedCase) {
    const Grids grids(30, 40);
    const auto r = report_for(0.5, 0.1, grids);
    ASSERT_EQ(static_cast<int>(r.pressure_profile.size()), grids.horizontal.node_count());
    EXPECT_EQ(r.pressure_profile.front(), std::make_pair(0.0, 0.0));
    EXPECT_EQ(r.pressure_profile.back(), std::make_pair(1.0, 0.0));
    EXPECT_TRUE(r.converged);
    EXPECT_GT(r.W, 0.0);
    EXPECT_DOUBLE_EQ(r.c_f, r.F / r.W);
    EXPECT_GT(max_pressure(r), 0.0);
    EXPECT_FALSE(r.W_rel.has_value());
}

TEST(Report, NoLoadGivesUndefinedCoefficient) {
    const auto params = slider_params().with_wall_speed(0.0);
    const Grids grids(10, 10);
    const auto r = make_report(solve(params, slider(), grids), slider(), params, grids);
    EXPECT_EQ(r.W, 0.0);
    EXPECT_TRUE(std::isnan(r.c_f));
}

TEST(Trends, RoughnessRaisesLoadAndLowersFrictionCoefficient) {
    const Grids grids(30, 40);
    for (double N : {0.1, 0.3}) {
        const auto r0 = report_for(0.0, N, grids);
        const auto r1 = report_for(0.5, N, grids);
        const auto r2 = report_for(1.0, N, grids);
        const auto [w1, c1] = compute_relative(r1, r0);
        const auto [w2, c2] = compute_relative(r2, r0);
        EXPECT_GT(w1, 1.0);
        EXPECT_GT(w2, w1);
        EXPECT_LT(c1, 1.0);
        EXPECT_LT(c2, c1);
    }
}

}  // namespace
}  // namespace microlub
