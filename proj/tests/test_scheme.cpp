#include "microlub/oracles.hpp"
#include "microlub/scheme.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace microlub {
namespace {

ModelParams slider_params(double M = 0.0, double N = 0.1) {
    return ModelParams::from_lubrication_params(N, 0.01, 0.1, 0.01, 1.0, M);
}

const BearingGeometry& slider() {
    static const BearingGeometry g = BearingGeometry::linear(-0.5);
    return g;
}

TEST(Potential, SmoothWallIsNodallyExact) {
    const VerticalGrid g(19);
    const auto pot = solve_potential(0.0, g);
    for (int k = 0; k < g.node_count(); ++k) EXPECT_NEAR(pot.psi[k], 0.5 * (1.0 - g.node(k) * g.node(k)), 1e-14);
    // trapezoid of the exact quadratic
    const double h = g.step();
    EXPECT_NEAR(pot.mean, 1.0 / 3.0 - h * h / 12.0, 1e-14);
}

TEST(Potential, AgreesWithOdeOracle) {
    const VerticalGrid g(400);
    for (double M : {0.5, 1.0, 1.9}) {
        const auto pot = solve_potential(M, g);
        const auto ode = oracles::psi_ode_oracle(M, 16000);
        double worst = 0.0;
        for (int k = 0; k < g.node_count(); ++k) worst = std::max(worst, std::abs(pot.psi[k] - ode.at(g.node(k))));
        EXPECT_LT(worst, 1e-6) << "M=" << M;
        EXPECT_NEAR(pot.mean, ode.mean, 1e-6) << "M=" << M;
    }
}

TEST(Potential, GrowsWithRoughness) {
    const VerticalGrid g(100);
    double prev = 0.0;
    for (double M : {0.0, 0.5, 1.0, 1.5, 1.9}) {
        const auto pot = solve_potential(M, g);
        EXPECT_GT(pot.mean, prev);
        prev = pot.mean;
        for (int k = 0; k + 1 < g.node_count(); ++k) EXPECT_GT(pot.psi[k], pot.psi[k + 1]);
    }
}

TEST(Columns, MatchDenseOracles) {
    const VerticalGrid g(60);
    const auto u = FemFunction::interpolate(g, [](double Z) { return (1.0 - Z) * (1.0 + 0.3 * std::sin(3.0 * Z)); });
    for (double M : {0.0, 0.5, 1.0}) {
        const auto params = slider_params(M);
        for (double h1 : {1.0, 0.75, 0.5}) {
            const auto w = solve_w_column(u, h1, params);
            const auto w_ref = oracles::dense_w_column(u, h1, params);
            const auto ut = solve_u_tilde_column(w, h1, params);
            const auto ut_ref = oracles::dense_u_tilde_column(w, h1, params);
            double scale_w = 0.0;
            double scale_u = 0.0;
            for (std::size_t k = 0; k < w_ref.size(); ++k) {
                scale_w = std::max(scale_w, std::abs(w_ref[k]));
                scale_u = std::max(scale_u, std::abs(ut_ref[k]));
            }
            for (std::size_t k = 0; k < w_ref.size(); ++k) {
                EXPECT_NEAR(w[static_cast<int>(k)], w_ref[k], 1e-10 * scale_w);
                EXPECT_NEAR(ut[static_cast<int>(k)], ut_ref[k], 1e-10 * scale_u);
            }
            EXPECT_TRUE(w.in_trial_space());
            EXPECT_TRUE(ut.in_trial_space());
        }
    }
}

TEST(Columns, UnconstrainedVelocityFromConstantMicrorotation) {
    // w = alpha / (2 h1) constant: no volume forcing, u'(0) = 1, so u = Z - 1.
    const auto params = slider_params();
    const VerticalGrid g(16);
    const double h1 = 0.8;
    const auto w = FemFunction::interpolate(g, [&](double) { return params.alpha() / (2.0 * h1); });
    const auto ut = solve_u_tilde_column(w, h1, params);
    for (int k = 0; k < g.node_count(); ++k) EXPECT_NEAR(ut[k], g.node(k) - 1.0, 1e-12);
}

TEST(Columns, MicrorotationVanishesForStickingCouetteWallAtRest) {
    // u = 0 and s1 = 0: no forcing at all.
    const auto params = slider_params().with_wall_speed(0.0);
    const auto w = solve_w_column(FemFunction::zero(VerticalGrid(10)), 1.0, params);
    for (double v : w.values()) EXPECT_EQ(v, 0.0);
}

TEST(Columns, RejectNonPositiveGap) {
    const VerticalGrid g(4);
    EXPECT_THROW(solve_w_column(FemFunction::zero(g), 0.0, slider_params()), std::invalid_argument);
    EXPECT_THROW(solve_u_tilde_column(FemFunction::zero(g), -1.0, slider_params()), std::invalid_argument);
}

TEST(Reynolds, NoFlowNoPressure) {
    const HorizontalGrid hg(9);
    const VerticalGrid vg(8);
    std::vector<FemFunction> cols(static_cast<std::size_t>(hg.column_count()), FemFunction::zero(vg));
    for (double p : solve_reynolds(cols, 0.3, slider(), hg)) EXPECT_EQ(p, 0.0);
}

TEST(Reynolds, UniformGapUniformFlowNoPressure) {
    const HorizontalGrid hg(9);
    const VerticalGrid vg(8);
    const auto flat = BearingGeometry::linear(0.0);
    std::vector<FemFunction> cols(static_cast<std::size_t>(hg.column_count()),
                                  FemFunction::interpolate(vg, [](double Z) { return 1.0 - Z; }));
    for (double p : solve_reynolds(cols, 0.3, flat, hg)) EXPECT_NEAR(p, 0.0, 1e-15);
}

TEST(Reynolds, ManufacturedQuadraticPressure) {
    // Unit gap, column flux q_c = psī (1 - 2 x_c): the discrete solution is p = x (1 - x) at the nodes.
    const HorizontalGrid hg(15);
    const VerticalGrid vg(6);
    const auto flat = BearingGeometry::linear(0.0);
    const double psi_bar = 0.37;
    std::vector<FemFunction> cols;
    for (int c = 0; c < hg.column_count(); ++c) {
        const double q = psi_bar * (1.0 - 2.0 * hg.midpoint(c));
        cols.push_back(FemFunction::interpolate(vg, [q](double Z) { return 2.0 * q * (1.0 - Z); }));
    }
    const auto p = solve_reynolds(cols, psi_bar, flat, hg);
    for (int i = 0; i < hg.node_count(); ++i) {
        const double x = hg.node(i);
        EXPECT_NEAR(p[static_cast<std::size_t>(i)], x * (1.0 - x), 1e-13);
    }
    const auto dp = pressure_gradient(p, hg);
    for (int c = 0; c < hg.column_count(); ++c)
        EXPECT_NEAR(dp[static_cast<std::size_t>(c)], 1.0 - 2.0 * hg.midpoint(c), 1e-12);
}

TEST(Reynolds, CorrectionMakesFluxConstant) {
    const auto params = slider_params(0.5);
    const Grids grids(23, 30);
    const auto pot = solve_potential(params.M(), grids.vertical);
    std::vector<FemFunction> ut;
    for (int c = 0; c < grids.horizontal.column_count(); ++c) {
        const double a = 1.0 + 0.2 * c;
        ut.push_back(FemFunction::interpolate(grids.vertical, [a](double Z) { return a * (1.0 - Z) * (1.0 + Z); }));
    }
    const auto p = solve_reynolds(ut, pot.mean, slider(), grids.horizontal);
    const auto dp = pressure_gradient(p, grids.horizontal);
    std::vector<FemFunction> u;
    for (int c = 0; c < grids.horizontal.column_count(); ++c) {
        const double h1 = slider().h1(grids.horizontal.midpoint(c));
        u.push_back(correct_velocity(ut[static_cast<std::size_t>(c)], dp[static_cast<std::size_t>(c)], h1, pot));
    }
    EXPECT_LT(max_flux_divergence(u, slider(), grids.horizontal), 1e-12);
    EXPECT_EQ(p.front(), 0.0);
    EXPECT_EQ(p.back(), 0.0);
}

TEST(Reynolds, CorrectionWithoutGradientIsIdentity) {
    const VerticalGrid vg(5);
    const auto pot = solve_potential(0.5, vg);
    const auto ut = FemFunction::interpolate(vg, [](double Z) { return 1.0 - Z * Z; });
    EXPECT_EQ(correct_velocity(ut, 0.0, 0.7, pot), ut);
    const auto shifted = correct_velocity(ut, 2.0, 0.5, pot);
    for (int k = 0; k < vg.node_count(); ++k) EXPECT_NEAR(shifted[k], ut[k] - 0.5 * pot.psi[k], 1e-15);
}

TEST(Iteration, ParallelMatchesSerialBitForBit) {
    const auto params = slider_params(1.0);
    const Grids grids(37, 45);
    const auto pot = solve_potential(params.M(), grids.vertical);
    auto a = initial_state(params, grids, InitialProfile::Couette);
    auto b = a;
    for (int n = 0; n < 5; ++n) {
        a = iterate(a, params, slider(), grids, pot);
        b = iterate_serial(b, params, slider(), grids, pot);
    }
    EXPECT_EQ(a.p, b.p);
    EXPECT_EQ(a.u1, b.u1);
    EXPECT_EQ(a.w2, b.w2);
    EXPECT_EQ(a.last_update_norm, b.last_update_norm);
}

TEST(Iteration, ConvergesToFixedPoint) {
    const auto params = slider_params(0.5);
    const Grids grids(20, 30);
    SolverOptions opt;
    opt.tol = 1e-11;
    const auto r = solve(params, slider(), grids, opt);
    ASSERT_TRUE(r.converged);
    const auto again = iterate(r.state, params, slider(), grids, r.potential);
    EXPECT_LT(again.last_update_norm, 1e-10);
    for (std::size_t i = 0; i < r.state.p.size(); ++i) EXPECT_NEAR(again.p[i], r.state.p[i], 1e-10);
}

TEST(Iteration, UpdatesDecayGeometrically) {
    const auto params = slider_params();
    const Grids grids(20, 30);
    SolverOptions opt;
    opt.tol = 1e-12;
    const auto r = solve(params, slider(), grids, opt);
    ASSERT_TRUE(r.converged);
    ASSERT_GT(r.trace.size(), 4u);
    for (std::size_t n = 1; n < r.trace.size(); ++n) {
        EXPECT_LT(r.trace[n].update_norm, r.trace[n - 1].update_norm);
        EXPECT_LT(r.trace[n].update_norm / r.trace[n - 1].update_norm, 0.5);
    }
}

TEST(Iteration, ZeroAndCouetteStartsAgree) {
    const auto params = slider_params(1.0);
    const Grids grids(15, 20);
    SolverOptions a;
    a.tol = 1e-11;
    SolverOptions b = a;
    b.init = InitialProfile::Zero;
    const auto ra = solve(params, slider(), grids, a);
    const auto rb = solve(params, slider(), grids, b);
    ASSERT_TRUE(ra.converged && rb.converged);
    for (std::size_t i = 0; i < ra.state.p.size(); ++i) EXPECT_NEAR(ra.state.p[i], rb.state.p[i], 1e-10);
}

TEST(Iteration, StationaryWallStaysAtRest) {
    const auto params = slider_params(0.5).with_wall_speed(0.0);
    const Grids grids(10, 10);
    const auto r = solve(params, slider(), grids);
    EXPECT_TRUE(r.converged);
    EXPECT_LE(r.state.iteration, 2);
    for (double p : r.state.p) EXPECT_EQ(p, 0.0);
}

TEST(Iteration, FluxConstraintHoldsAfterEverySweep) {
    const auto r = solve(slider_params(1.0), slider(), Grids(30, 40));
    for (const auto& rec : r.trace) EXPECT_LT(rec.max_flux_divergence, 1e-9);
}

TEST(Iteration, ReportsNonConvergence) {
    SolverOptions opt;
    opt.max_iter = 2;
    opt.tol = 1e-14;
    const auto r = solve(slider_params(), slider(), Grids(10, 10), opt);
    EXPECT_FALSE(r.converged);
    EXPECT_EQ(r.state.iteration, 2);
    EXPECT_EQ(r.trace.size(), 2u);
}

TEST(Solution, SmoothWallMatchesCoupledReference) {
    const auto params = slider_params();
    const int n1 = 40;
    const auto r = solve(params, slider(), Grids(n1, 80));
    ASSERT_TRUE(r.converged);
    const auto ref = oracles::m0_reference(params, [](double x) { return slider().h1(x); }, 4 * (n1 + 1), 800);
    for (int i = 0; i < n1 + 2; ++i)
        EXPECT_NEAR(r.state.p[static_cast<std::size_t>(i)], ref.p[static_cast<std::size_t>(4 * i)], 1e-4);
}

TEST(Solution, RoughWallMatchesCoupledReference) {
    const auto params = slider_params(0.5);
    const int n1 = 40;
    const auto r = solve(params, slider(), Grids(n1, 80));
    ASSERT_TRUE(r.converged);
    const auto ref = oracles::coupled_reference(params, [](double x) { return slider().h1(x); }, 4 * (n1 + 1), 800);
    for (int i = 0; i < n1 + 2; ++i)
        EXPECT_NEAR(r.state.p[static_cast<std::size_t>(i)], ref.p[static_cast<std::size_t>(4 * i)], 1e-4);
}

TEST(Solution, RoughnessRaisesPeakPressure) {
    const Grids grids(40, 60);
    const auto smooth = solve(slider_params(0.0), slider(), grids);
    const auto rough = solve(slider_params(1.0), slider(), grids);
    EXPECT_GT(*std::max_element(rough.state.p.begin(), rough.state.p.end()),
              *std::max_element(smooth.state.p.begin(), smooth.state.p.end()));
}

TEST(Stability, ClosedFormAtReferenceParameters) {
    // Smooth wall: psī = 1/3, ||psi||_{V_Z} = 1/sqrt(3), h1 in [0.5, 1].
    const auto params = slider_params();
    const double n2 = 0.01;
    const double expected = std::numbers::sqrt2 * 2.0 * n2 * (2.0 * n2 + 2.0 / params.alpha()) *
                            (1.0 + std::numbers::sqrt2 * (1.0 / std::sqrt(3.0)) * 3.0 * 8.0);
    const auto s = stability_constant(params, 1.0, 0.5, 1.0 / std::sqrt(3.0), 1.0 / 3.0);
    EXPECT_NEAR(s.C, expected, 1e-14);
    EXPECT_NEAR(s.condition_value, expected * 51.0, 1e-12);
    EXPECT_FALSE(s.satisfied);

    const auto discrete = stability_constant(params, slider(), solve_potential(0.0, VerticalGrid(400)), HorizontalGrid(200));
    EXPECT_NEAR(discrete.C, expected, 1e-4 * expected);
}

TEST(Stability, ConstantIgnoresSlipButConditionDoesNot) {
    const auto a = ModelParams::from_boundary_coefficients(0.1, 0.01, 90.1, 0.0, 1.0, 0.5);
    const auto b = ModelParams::from_boundary_coefficients(0.1, 0.01, 90.1, 50.0, 1.0, 0.5);
    const auto sa = stability_constant(a, 1.0, 0.5, 0.64, 0.37);
    const auto sb = stability_constant(b, 1.0, 0.5, 0.64, 0.37);
    EXPECT_EQ(sa.C, sb.C);
    EXPECT_NEAR(sb.condition_value, 51.0 * sa.condition_value, 1e-12);
}

TEST(Stability, DegradesNearCoercivityLimit) {
    const VerticalGrid g(200);
    const HorizontalGrid hg(50);
    const auto low = stability_constant(slider_params(0.5), slider(), solve_potential(0.5, g), hg);
    const auto high = stability_constant(slider_params(1.9), slider(), solve_potential(1.9, g), hg);
    EXPECT_GT(high.C, low.C);
}

TEST(Stability, SmallCouplingSatisfiesCondition) {
    const auto params = ModelParams::from_boundary_coefficients(0.01, 0.01, 100.0, 0.0, 1.0, 0.0);
    const auto s = stability_constant(params, slider(), solve_potential(0.0, VerticalGrid(50)), HorizontalGrid(20));
    EXPECT_TRUE(s.satisfied);
}

TEST(Stability, APrioriBoundHoldsAlongIterates) {
    for (double M : {0.0, 1.0}) {
        const auto params = slider_params(M);
        const auto r = solve(params, slider(), Grids(30, 40));
        for (const auto& rec : r.trace) {
            const double bound =
                r.stability.C * ((1.0 + params.beta()) * rec.previous_norm + params.beta() * std::abs(params.s1()));
            EXPECT_LE(rec.norm, bound) << "M=" << M << " iteration " << rec.iteration;
        }
    }
}

}  // namespace
}  // namespace microlub
