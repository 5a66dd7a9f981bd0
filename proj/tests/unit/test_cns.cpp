#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "gaslab/cns.hpp"

using namespace gaslab;

TEST_CASE("config validation", "[cns]") {
    CnsConfig cfg;
    cfg.dt = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = CnsConfig{};
    cfg.delta = -0.1;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("closed form: linear growth of theta^{1+delta}", "[cns]") {
    CnsConfig cfg;
    cfg.g0 = 2.0;
    cfg.delta = 1.0;
    double c1 = 2.0 * 4.0 / (12.0 * M_PI * M_PI * cfg.c_mu);
    CHECK(closed_form_theta_av(0.0, cfg) == 1.0);
    CHECK(closed_form_theta_av(7.0, cfg) == Catch::Approx(std::sqrt(7.0 * c1 + 1.0)).margin(1e-14));
    cfg.delta = 0.5;
    double c2 = 1.5 * 4.0 / (12.0 * M_PI * M_PI * cfg.c_mu);
    CHECK(closed_form_theta_av(7.0, cfg) ==
          Catch::Approx(std::pow(7.0 * c2 + 1.0, 1.0 / 1.5)).margin(1e-14));
}

TEST_CASE("simulation tracks the closed form once quasi-steady", "[cns]") {
    CnsConfig cfg;
    cfg.g0 = 2.0;
    cfg.t_end = 50.0;
    cfg.sample_interval = 1.0;
    CnsSeries s = cns_run(cfg);
    REQUIRE(!s.times.empty());

    for (size_t i = 0; i < s.times.size(); ++i) {
        if (s.times[i] < 10.0) continue;
        double ref = closed_form_theta_av(s.times[i], cfg);
        INFO("t = " << s.times[i]);
        CHECK(s.theta_av[i] == Catch::Approx(ref).epsilon(0.05));
    }

    // temperature mean never decreases under viscous heating
    for (size_t i = 1; i < s.theta_av.size(); ++i) CHECK(s.theta_av[i] >= s.theta_av[i - 1] - 1e-12);
}

TEST_CASE("velocity settles onto the quasi-steady balance profile", "[cns]") {
    CnsConfig cfg;
    cfg.g0 = 2.0;
    cfg.t_end = 40.0;
    cfg.dt = 0.005;
    CnsState s = cns_init(cfg);
    while (s.time < cfg.t_end - 0.5 * cfg.dt) cns_step(s, cfg);

    std::vector<double> u_ref, dudx_ref;
    quasi_steady_profile(cns_theta_av(s), cfg, cfg.n_cells, u_ref, dudx_ref);
    double amp = 0.0, amp_ref = 0.0;
    for (int i = 0; i < cfg.n_cells; ++i) {
        amp = std::max(amp, std::fabs(s.u2[i]));
        amp_ref = std::max(amp_ref, std::fabs(u_ref[i]));
    }
    CHECK(amp == Catch::Approx(amp_ref).epsilon(0.05));

    // symmetry: u2 odd, theta even about x = 0
    int n = cfg.n_cells;
    for (int i = 0; i < n / 2; ++i) {
        CHECK(s.u2[i] == Catch::Approx(-s.u2[n - 1 - i]).margin(1e-10));
        CHECK(s.theta[i] == Catch::Approx(s.theta[n - 1 - i]).margin(1e-10));
    }
}

TEST_CASE("constant-coefficient limit grows linearly", "[cns]") {
    CnsConfig cfg;
    cfg.delta = 0.0;
    cfg.g0 = 2.0;
    cfg.t_end = 400.0;
    cfg.sample_interval = 10.0;
    CnsSeries s = cns_run(cfg);
    double c1 = cfg.g0 * cfg.g0 * cfg.rho0 / (12.0 * M_PI * M_PI * cfg.c_mu);
    double slope = (s.theta_av.back() - s.theta_av[s.theta_av.size() - 5]) /
                   (s.times.back() - s.times[s.times.size() - 5]);
    CHECK(slope == Catch::Approx(c1).epsilon(0.03));
}

TEST_CASE("half step size does not move the answer", "[cns]") {
    CnsConfig a;
    a.g0 = 2.0;
    a.t_end = 30.0;
    a.sample_interval = 30.0;
    CnsConfig b = a;
    b.dt = a.dt / 2;
    double ta = cns_run(a).theta_av.back();
    double tb = cns_run(b).theta_av.back();
    CHECK(ta == Catch::Approx(tb).epsilon(2e-3));
}
