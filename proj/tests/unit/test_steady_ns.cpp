#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "gaslab/steady_ns.hpp"

using namespace gaslab;
using cd = std::complex<double>;

namespace {

// u = (sin 2pi y, sin 2pi z, 0): div(u (x) u) lives at k = (0,1,+-1) only.
FourierVectorField crossed_shears(int N) {
    FourierVectorField u(N);
    u.at(0, 1, 0, 0) = cd(0, -0.5);
    u.at(0, -1, 0, 0) = cd(0, 0.5);
    u.at(0, 0, 1, 1) = cd(0, -0.5);
    u.at(0, 0, -1, 1) = cd(0, 0.5);
    return u;
}

// Taylor-Green: (sin 2pi x cos 2pi y, -cos 2pi x sin 2pi y, 0); its advection
// term is a pure gradient, so the projected bilinear term vanishes.
FourierVectorField taylor_green(int N) {
    FourierVectorField u(N);
    u.at(1, 1, 0, 0) = cd(0, -0.25);
    u.at(-1, -1, 0, 0) = cd(0, 0.25);
    u.at(1, -1, 0, 0) = cd(0, -0.25);
    u.at(-1, 1, 0, 0) = cd(0, 0.25);
    u.at(1, 1, 0, 1) = cd(0, 0.25);
    u.at(-1, -1, 0, 1) = cd(0, -0.25);
    u.at(1, -1, 0, 1) = cd(0, -0.25);
    u.at(-1, 1, 0, 1) = cd(0, 0.25);
    return u;
}

}  // namespace

TEST_CASE("Leray projection annihilates gradients and is idempotent", "[steady_ns]") {
    FourierVectorField grad(4);
    // grad of cos(2 pi (x+2y)): i k * coefficient pattern
    for (int s : {1, -1}) {
        grad.at(s, 2 * s, 0, 0) = cd(0, 0.5 * s);
        grad.at(s, 2 * s, 0, 1) = cd(0, 1.0 * s);
    }
    auto p = leray_project(grad);
    CHECK(p.l2_norm() < 1e-15);

    FourierVectorField mix(4);
    mix.at(1, 0, 0, 2) = cd(0.3, -0.1);
    mix.at(-1, 0, 0, 2) = cd(0.3, 0.1);
    mix.at(2, 1, 0, 0) = cd(0.2, 0.05);
    mix.at(-2, -1, 0, 0) = cd(0.2, -0.05);
    auto p1 = leray_project(mix);
    CHECK(p1.max_divergence() < 1e-13);
    auto p2 = leray_project(p1);
    double diff = 0;
    for (size_t i = 0; i < p1.c.size(); ++i) diff = std::max(diff, std::abs(p1.c[i] - p2.c[i]));
    CHECK(diff < 1e-15);
}

TEST_CASE("bilinear term matches the hand-computed crossed-shear modes", "[steady_ns]") {
    auto u = crossed_shears(3);
    auto t = bilinear_T(u);
    cd expect(0, -1.0 / (16.0 * M_PI));
    CHECK(std::abs(t.at(0, 1, 1, 0) - expect) < 1e-13);
    CHECK(std::abs(t.at(0, 1, -1, 0) + expect) < 1e-13);
    CHECK(std::abs(t.at(0, -1, -1, 0) - std::conj(t.at(0, 1, 1, 0))) < 1e-14);
    // nothing anywhere else, and stays solenoidal
    double spill = 0;
    for (int kx = -3; kx <= 3; ++kx)
        for (int ky = -3; ky <= 3; ++ky)
            for (int kz = -3; kz <= 3; ++kz)
                for (int comp = 0; comp < 3; ++comp) {
                    if (comp == 0 && kx == 0 && std::abs(ky) == 1 && std::abs(kz) == 1) continue;
                    spill = std::max(spill, std::abs(t.at(kx, ky, kz, comp)));
                }
    CHECK(spill < 1e-13);
}

TEST_CASE("Taylor-Green advection projects to zero", "[steady_ns]") {
    auto u = taylor_green(3);
    CHECK(u.max_divergence() < 1e-14);
    auto t = bilinear_T(u);
    CHECK(t.l2_norm() < 1e-13 * u.l2_norm());
}

TEST_CASE("shear force solves in closed form", "[steady_ns]") {
    SteadyNsConfig cfg;
    cfg.nu = 0.7;
    cfg.N = 4;
    cfg.force = shear_force(4, 1.3);
    auto res = solve_steady(cfg);
    REQUIRE(res.converged);
    CHECK(res.iterations <= 3);

    double coeff = 1.3 / (2.0 * 4.0 * M_PI * M_PI * 0.7);  // |c_{(1,0,0),3}|
    CHECK(std::abs(res.u.at(1, 0, 0, 2) - cd(0, -coeff)) < 1e-12);
    CHECK(std::abs(res.u.at(-1, 0, 0, 2) - cd(0, coeff)) < 1e-12);

    double amp = 1.3 / (4.0 * M_PI * M_PI * 0.7);
    CHECK(res.obstruction == Catch::Approx(4.0 * M_PI * M_PI * amp * amp).epsilon(1e-10));
    // for the pure shear the energy inequality is saturated
    CHECK(res.energy_margin == Catch::Approx(0.0).margin(1e-12));
    CHECK(res.grad_norm == Catch::Approx(res.force_hminus1 / 0.7).margin(1e-12));
}

TEST_CASE("temperature fixed point contracts to zero on the shear flow", "[steady_ns]") {
    SteadyNsConfig cfg;
    cfg.N = 6;
    cfg.force = shear_force(6, 1.0);
    auto res = solve_steady(cfg);
    REQUIRE(res.converged);
    CHECK(nsf_theta(res.u, 1.0, 60, 7) < 1e-10);
}

TEST_CASE("random divergence-free forces: norms, determinism, energy bound", "[steady_ns]") {
    auto f1 = random_divfree_force(6, 2, 0.03, 11);
    auto f2 = random_divfree_force(6, 2, 0.03, 11);
    auto f3 = random_divfree_force(6, 2, 0.03, 12);
    REQUIRE(f1.c.size() == f2.c.size());
    for (size_t i = 0; i < f1.c.size(); ++i) REQUIRE(f1.c[i] == f2.c[i]);
    CHECK(f1.c != f3.c);
    CHECK(hminus1_norm(f1) == Catch::Approx(0.03).margin(1e-12));
    CHECK(f1.max_divergence() < 1e-13);

    SteadyNsConfig cfg;
    cfg.N = 6;
    cfg.force = f1;
    auto res = solve_steady(cfg);
    REQUIRE(res.converged);
    CHECK(res.energy_margin >= -1e-12);
    CHECK(res.smallness_held);
    CHECK(res.u.max_divergence() < 1e-12);

    // Picard is a contraction here: residuals fall monotonically
    for (size_t i = 1; i < res.residual_history.size(); ++i)
        CHECK(res.residual_history[i] < res.residual_history[i - 1]);
    for (size_t i = 1; i < res.update_ratios.size(); ++i) CHECK(res.update_ratios[i] < 0.9);
}

TEST_CASE("oversized forcing reports non-convergence instead of lying", "[steady_ns]") {
    SteadyNsConfig cfg;
    cfg.N = 4;
    cfg.nu = 0.05;
    cfg.max_iter = 25;
    cfg.force = random_divfree_force(4, 2, 40.0, 3);
    auto res = solve_steady(cfg);
    CHECK(!res.converged);
    CHECK(!res.smallness_held);
}

TEST_CASE("config validation", "[steady_ns]") {
    SteadyNsConfig cfg;
    cfg.force = shear_force(8, 1.0);
    cfg.N = 6;  // force modes exceed the solver truncation
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = SteadyNsConfig{};
    cfg.damping = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
