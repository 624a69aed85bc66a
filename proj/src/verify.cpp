#include "microlub/driver.hpp"
#include "microlub/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <random>

namespace microlub {

namespace {

CheckResult check(std::string name, bool ok, std::string detail) {
    return CheckResult{std::move(name), ok, std::move(detail)};
}

std::string sci(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

}  // namespace

std::vector<CheckResult> run_verification(const RunConfig& config, std::ostream& out) {
    config.validate();
    std::vector<CheckResult> results;
    const VerticalGrid vgrid(config.nZ);

    // Potential against the ODE oracle.
    {
        double worst = 0.0;
        for (double M : {0.0, 0.5, 1.0}) {
            const auto fem = solve_potential(M, vgrid);
            const auto ode = oracles::psi_ode_oracle(M, 40 * (config.nZ + 1));
            for (int k = 0; k < vgrid.node_count(); ++k)
                worst = std::max(worst, std::abs(fem.psi[k] - ode.at(vgrid.node(k))));
        }
        const double h = vgrid.step();
        results.push_back(check("potential vs ODE oracle", worst <= std::max(1e-6, 5.0 * h * h),
                                "max nodal error " + sci(worst)));
    }

    // Thomas solve against dense elimination on the column systems.
    {
        const auto params = config.params();
        double worst = 0.0;
        for (double reaction : {0.0, 4.0 * params.coupling() / params.Rc()}) {
            auto sys = assemble_advected_laplacian(params.M(), vgrid, reaction);
            for (int i = 0; i < sys.size(); ++i) sys.rhs[static_cast<std::size_t>(i)] = std::sin(0.37 * i + 1.0);
            const auto fast = thomas_solve(sys);
            const auto slow = oracles::dense_solve(oracles::DenseSystem::from_tridiagonal(sys));
            double num = 0.0;
            double den = 0.0;
            for (std::size_t i = 0; i < fast.size(); ++i) {
                num = std::max(num, std::abs(fast[i] - slow[i]));
                den = std::max(den, std::abs(slow[i]));
            }
            worst = std::max(worst, num / den);
        }
        results.push_back(check("tridiagonal vs dense solve", worst <= 1e-10, "relative difference " + sci(worst)));
    }

    // Coercivity, Poincare and trace inequalities on random members of V_nZ.
    {
        std::mt19937_64 rng(20240611);
        std::normal_distribution<double> gauss;
        bool ok = true;
        double tightest = std::numeric_limits<double>::infinity();
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<double> dofs(static_cast<std::size_t>(vgrid.dof_count()));
            for (auto& d : dofs) d = gauss(rng);
            const auto phi = FemFunction::from_dofs(vgrid, dofs);
            const double grad = vz_norm_squared(phi);
            for (double M : {0.0, 0.5, 1.0, 1.9}) {
                const double a = bilinear_form(M, 0.0, phi, phi);
                tightest = std::min(tightest, a / grad - (1.0 - M / 2.0));
                ok = ok && a >= (1.0 - M / 2.0) * grad * (1.0 - 1e-12);
            }
            ok = ok && integrate_product(phi, phi) <= grad && phi.at_wall() * phi.at_wall() <= grad;
        }
        results.push_back(check("coercivity/Poincare/trace inequalities", ok, "min relative coercivity slack " + sci(tightest)));
    }

    // Smooth-wall scheme against the coupled finite-difference reference.
    {
        const auto params = config.params(config.N, 0.0);
        const auto geometry = config.geometry();
        auto options = config.solver_options();
        const auto result = solve(params, geometry, config.grids(), options);
        const int refine = 4;
        const auto ref = oracles::m0_reference(params, [&](double x) { return geometry.h1(x); },
                                               refine * (config.n1 + 1), 10 * (config.nZ + 1));
        double worst = 0.0;
        for (int i = 0; i < config.n1 + 2; ++i)
            worst = std::max(worst, std::abs(result.state.p[static_cast<std::size_t>(i)] -
                                             ref.p[static_cast<std::size_t>(refine * i)]));
        results.push_back(check("M=0 pressure vs coupled reference", result.converged && worst <= 1e-4,
                                "max pressure difference " + sci(worst) + ", iterations " +
                                    std::to_string(result.state.iteration)));

        double divergence = 0.0;
        for (const auto& r : result.trace) divergence = std::max(divergence, r.max_flux_divergence);
        results.push_back(check("flux constraint after every sweep", divergence <= 1e-9,
                                "max flux divergence " + sci(divergence)));
    }

    for (const auto& r : results)
        out << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.detail << ")\n";
    return results;
}

}  // namespace microlub
