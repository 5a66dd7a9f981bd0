#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "gaslab/bgk.hpp"
#include "gaslab/grids.hpp"
#include "gaslab/reduced_dist.hpp"

using namespace gaslab;

TEST_CASE("velocity grid is midpoint-symmetric to the bit", "[kinetic_core]") {
    VelocityGrid2D vg;
    vg.n_v1 = 48;
    vg.n_v2 = 64;
    vg.scale = 1.37;
    for (int k = 0; k < vg.n_v1; ++k) REQUIRE(vg.node1(vg.mirror1(k)) == -vg.node1(k));
    for (int k = 0; k < vg.n_v2; ++k) REQUIRE(vg.node2(vg.n_v2 - 1 - k) == -vg.node2(k));
    // no node at zero
    for (int k = 0; k < vg.n_v1; ++k) REQUIRE(vg.node1(k) != 0.0);
}

TEST_CASE("grid validation", "[kinetic_core]") {
    VelocityGrid2D vg;
    vg.n_v1 = 63;
    CHECK_THROWS_AS(vg.validate(), std::invalid_argument);
    SpatialGrid1D sg;
    sg.x_max = 0.3;
    CHECK_THROWS_AS(sg.validate(), std::invalid_argument);
}

TEST_CASE("analytic reduced Maxwellian has the right moments", "[kinetic_core]") {
    VelocityGrid2D vg;
    MaxwellianParams p;
    p.rho = 1.2;
    p.u = {0.3, -0.2, 0.0};
    p.theta = 0.9;
    auto f = maxwellian_reduced(p, vg, 3);
    auto m = moments(f, vg);
    for (int ix = 0; ix < 3; ++ix) {
        CHECK(m.rho[ix] == Catch::Approx(1.2).margin(2e-5));
        CHECK(m.u1[ix] == Catch::Approx(0.3).margin(2e-5));
        CHECK(m.u2[ix] == Catch::Approx(-0.2).margin(2e-5));
        CHECK(m.theta[ix] == Catch::Approx(0.9).margin(2e-5));
    }
    // H = theta * G for the analytic form
    for (int i = 0; i < vg.n_v1; i += 7)
        for (int j = 0; j < vg.n_v2; j += 7)
            CHECK(f.h(i, j, 1) == Catch::Approx(0.9 * f.g(i, j, 1)).margin(1e-300));
}

TEST_CASE("moment-matched Maxwellian reproduces grid moments to rounding", "[kinetic_core]") {
    VelocityGrid2D vg;
    MaxwellianParams p;
    p.rho = 1.3;
    p.u = {0.2, -0.4, 0.0};
    p.theta = 1.7;
    auto f = moment_matched_maxwellian(p, vg, 1);
    auto m = moments(f, vg);
    CHECK(m.rho[0] == Catch::Approx(1.3).margin(1e-13));
    CHECK(m.u1[0] == Catch::Approx(0.2).margin(1e-13));
    CHECK(m.u2[0] == Catch::Approx(-0.4).margin(1e-13));
    CHECK(m.theta[0] == Catch::Approx(1.7).margin(1e-13));

    // shared closure parameter: H/G constant across the grid
    double b = f.h(0, 0, 0) / f.g(0, 0, 0);
    for (int i = 0; i < vg.n_v1; i += 5)
        for (int j = 0; j < vg.n_v2; j += 5)
            CHECK(f.h(i, j, 0) / f.g(i, j, 0) == Catch::Approx(b).margin(1e-12));
}

TEST_CASE("mixture moments are linear: two-stream temperature", "[kinetic_core]") {
    VelocityGrid2D vg;
    MaxwellianParams plus, minus;
    plus.u = {0.0, 0.9, 0.0};
    minus.u = {0.0, -0.9, 0.0};
    auto fp = moment_matched_maxwellian(plus, vg, 1);
    auto fm = moment_matched_maxwellian(minus, vg, 1);
    ReducedDistributionPair mix(1, vg.n_v1, vg.n_v2);
    for (size_t k = 0; k < mix.G.size(); ++k) {
        mix.G[k] = 0.5 * (fp.G[k] + fm.G[k]);
        mix.H[k] = 0.5 * (fp.H[k] + fm.H[k]);
    }
    auto m = moments(mix, vg);
    CHECK(m.rho[0] == Catch::Approx(1.0).margin(1e-13));
    CHECK(m.u2[0] == Catch::Approx(0.0).margin(1e-14));
    CHECK(m.theta[0] == Catch::Approx(1.0 + 0.81 / 3.0).margin(1e-13));
}

TEST_CASE("entropy of the global Maxwellian matches the closed form", "[kinetic_core]") {
    // iint F ln F dv dx for M_(1,0,1) on |x| <= 1/4 equals -(3/4)(1 + ln 2 pi).
    VelocityGrid2D vg;
    SpatialGrid1D sg;
    auto f = moment_matched_maxwellian(MaxwellianParams{}, vg, sg.n_cells);
    double expected = -0.75 * (1.0 + std::log(2.0 * M_PI));
    CHECK(entropy(f, vg, sg) == Catch::Approx(expected).margin(1e-6));
}

TEST_CASE("moment-matched Maxwellian minimizes the entropy surrogate", "[kinetic_core]") {
    VelocityGrid2D vg;
    MaxwellianParams cold, hot;
    cold.theta = 0.7;
    hot.theta = 1.3;
    auto fc = moment_matched_maxwellian(cold, vg, 1);
    auto fh = moment_matched_maxwellian(hot, vg, 1);
    ReducedDistributionPair mix(1, vg.n_v1, vg.n_v2);
    for (size_t k = 0; k < mix.G.size(); ++k) {
        mix.G[k] = 0.5 * (fc.G[k] + fh.G[k]);
        mix.H[k] = 0.5 * (fc.H[k] + fh.H[k]);
    }
    auto m = moments(mix, vg);
    MaxwellianParams eq;
    eq.rho = m.rho[0];
    eq.u = {m.u1[0], m.u2[0], 0.0};
    eq.theta = m.theta[0];
    auto feq = moment_matched_maxwellian(eq, vg, 1);
    double s_mix = entropy_cell(mix, vg, 0);
    double s_eq = entropy_cell(feq, vg, 0);
    CHECK(s_eq < s_mix - 1e-6);
}

TEST_CASE("maxwellian params validation", "[kinetic_core]") {
    MaxwellianParams p;
    p.theta = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.theta = 1.0;
    p.u[2] = 0.1;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("specular ghost mirrors v1 and kills the wall mass flux", "[kinetic_core]") {
    VelocityGrid2D vg;
    vg.n_v1 = 16;
    vg.n_v2 = 16;
    ReducedDistributionPair f(4, 16, 16);
    std::mt19937_64 eng(7);
    std::uniform_real_distribution<double> uni(0.1, 1.0);
    for (auto& v : f.G) v = uni(eng);
    for (auto& v : f.H) v = uni(eng);

    for (int wall : {0, 1}) {
        int ix = wall == 0 ? 0 : 3;
        auto ghost = specular_ghost(f, vg, wall);
        for (int i = 0; i < 16; ++i)
            for (int j = 0; j < 16; ++j)
                REQUIRE(ghost[static_cast<size_t>(i) * 16 + j] == f.g(vg.mirror1(i), j, ix));
        CHECK(std::fabs(wall_mass_flux(f, vg, wall)) < 1e-12);
    }
}

TEST_CASE("total mass integrates rho over the slab", "[kinetic_core]") {
    VelocityGrid2D vg;
    SpatialGrid1D sg;
    sg.n_cells = 20;
    auto f = moment_matched_maxwellian(MaxwellianParams{}, vg, sg.n_cells);
    CHECK(total_mass(f, vg, sg) == Catch::Approx(0.5).margin(1e-13));
}
