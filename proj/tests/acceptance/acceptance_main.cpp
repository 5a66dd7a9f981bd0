// Acceptance gate: one numbered criterion per invocation (`acceptance <n>`,
// n in 1..8). Prints one line per sub-check with the observed number against
// its pinned tolerance and exits nonzero if anything failed. Criterion 4 runs
// a shortened horizon by default; set GASLAB_FULL_HORIZON=1 for the full one.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "gaslab/bgk.hpp"
#include "gaslab/cns.hpp"
#include "gaslab/diagnostics.hpp"
#include "gaslab/dsmc.hpp"
#include "gaslab/gauss_moments.hpp"
#include "gaslab/rng.hpp"
#include "gaslab/steady_ns.hpp"

using namespace gaslab;

namespace {

int g_failures = 0;

void check(bool ok, const char* label, double observed, const char* bound) {
    std::printf("  %-4s %-58s observed %.6g, require %s\n", ok ? "ok" : "FAIL", label,
                observed, bound);
    if (!ok) ++g_failures;
}

double at_time(const std::vector<double>& times, const std::vector<double>& values, double t) {
    size_t best = 0;
    for (size_t i = 1; i < times.size(); ++i)
        if (std::fabs(times[i] - t) < std::fabs(times[best] - t)) best = i;
    return values[best];
}

IsotropicWeight weight_one() { return {"one", [](double) { return 1.0; }}; }
IsotropicWeight weight_r2() { return {"r2", [](double r) { return r * r; }}; }
IsotropicWeight weight_exp() { return {"exp-r", [](double r) { return std::exp(-r); }}; }

// --------------------------------------------------------------------------

int criterion_1() {
    std::puts("criterion 1: closure identity suite");
    QuadratureSpec gh;  // 24-node Gauss-Hermite
    for (const auto& w : {weight_one(), weight_r2()}) {
        auto reports = verify_appendix(w, w, gh, 1e-10);
        for (const auto& r : reports) {
            std::string label = r.identity_name + " [" + w.label + "]";
            check(r.passed, label.c_str(), r.max_abs_error, "<= 1e-10");
        }
    }
    // e^{-r} is not a polynomial: Gauss-Hermite loses its exactness, so the
    // structural identities run on the truncated midpoint rule instead. The
    // nu/kappa dual formulas stay pointwise-identical sums under any rule.
    {
        QuadratureSpec tz;
        tz.scheme = QuadScheme::trapezoid_truncated;
        tz.nodes_per_axis = 96;  // anisotropy residual ~2e-8 here, 4.5e-6 at 48
        tz.truncation_radius = 10.0;
        auto reports = verify_appendix(weight_exp(), weight_exp(), tz, 1e-6);
        for (const auto& r : reports) {
            std::string label = r.identity_name + " [exp-r]";
            check(r.passed, label.c_str(), r.max_abs_error, "<= 1e-6");
        }
    }
    return g_failures;
}

int criterion_2() {
    std::puts("criterion 2: kinetic equilibrium fidelity, 1e4 steps");
    BgkConfig cfg;
    cfg.f0 = 0.0;
    BgkSolver solver(cfg);
    double mass0 = solver.mass();
    double dt = solver.suggest_dt();
    for (int i = 0; i < 10000; ++i) solver.step(dt);
    check(std::fabs(solver.theta_av() - 1.0) <= 1e-8, "|theta_av - 1|",
          std::fabs(solver.theta_av() - 1.0), "<= 1e-8");
    check(std::fabs(solver.u2_av()) <= 1e-10, "|u2|_av", std::fabs(solver.u2_av()),
          "<= 1e-10");
    double drift = std::fabs(solver.mass() / mass0 - 1.0);
    check(drift <= 1e-10, "relative mass drift", drift, "<= 1e-10");
    return g_failures;
}

int criterion_3() {
    std::puts("criterion 3: driven heating at kn = 0.1, f0 = 2");
    BgkConfig cfg;  // defaults: 100 x 64 x 64, t_end = 1000/sqrt(2)
    BgkSolver solver(cfg);
    TimeSeries full = solver.run();

    double t_half = 100.0 / std::sqrt(2.0);
    double theta_end = full.theta_av.back();
    check(theta_end >= 42.5 && theta_end <= 57.5, "theta_av(1000/sqrt 2)", theta_end,
          "in [42.5, 57.5]");

    BgkConfig half = cfg;
    half.grid.n_cells = 50;
    half.vgrid.n_v1 = 32;
    half.vgrid.n_v2 = 32;
    half.t_end = t_half;
    BgkSolver hsolver(half);
    TimeSeries hs = hsolver.run();
    double ref = at_time(full.times, full.theta_av, t_half);
    double rel = std::fabs(hs.theta_av.back() / ref - 1.0);
    check(rel <= 0.05, "half-resolution deviation at t = 100/sqrt 2", rel, "<= 0.05");

    double drift = std::fabs(full.mass.back() / full.mass.front() - 1.0);
    check(drift <= 1e-8, "relative mass drift over the run", drift, "<= 1e-8");
    std::printf("  info rescaling events: %zu, final grid scale %.3f\n",
                solver.remaps().size(), solver.vgrid().scale);
    return g_failures;
}

int criterion_4() {
    const char* env = std::getenv("GASLAB_FULL_HORIZON");
    bool full_horizon = env && std::strcmp(env, "1") == 0;
    double t_end = (full_horizon ? 20000.0 : 2000.0) / std::sqrt(2.0);
    std::printf("criterion 4: growth exponents to t = %.6g%s\n", t_end,
                full_horizon ? " (full horizon)" : " (shortened horizon)");

    BgkConfig cfg;
    cfg.t_end = t_end;
    cfg.sample_interval = 1.0;
    BgkSolver solver(cfg);
    TimeSeries ts = solver.run();

    std::vector<double> fit_t;
    std::vector<double> alpha = loglog_slope(ts.times, ts.theta_av, 0.25, &fit_t);
    if (full_horizon) {
        double a_end = at_time(fit_t, alpha, t_end);
        check(a_end >= 0.60 && a_end <= 0.72, "alpha at t = 2e4/sqrt 2", a_end,
              "in [0.60, 0.72]");
        std::vector<double> beta = loglog_slope(ts.times, ts.u2_av, 0.25);
        double b_end = at_time(fit_t, beta, t_end);
        check(b_end >= -0.40 && b_end <= -0.28, "beta at t = 2e4/sqrt 2", b_end,
              "in [-0.40, -0.28]");
    } else {
        double a_end = at_time(fit_t, alpha, t_end);
        check(a_end >= 0.45 && a_end <= 0.80, "alpha at t = 2e3/sqrt 2", a_end,
              "in [0.45, 0.80]");
        // document the increasing trend of the local exponent
        double a_mid = at_time(fit_t, alpha, 300.0 / std::sqrt(2.0));
        std::printf("  info alpha trend:");
        for (double t : {300.0, 600.0, 1000.0, 1400.0, 2000.0}) {
            double tt = t / std::sqrt(2.0);
            std::printf("  a(%.5g)=%.4f", tt, at_time(fit_t, alpha, tt));
        }
        std::printf("\n");
        check(a_end > a_mid, "alpha increasing from t = 300/sqrt 2", a_end - a_mid, "> 0");
    }
    return g_failures;
}

int criterion_5() {
    std::puts("criterion 5: reduced continuum model vs closed form");
    for (double delta : {1.0, 0.5}) {
        CnsConfig cfg;
        cfg.delta = delta;
        cfg.g0 = 2.0;
        cfg.t_end = 1000.0;
        cfg.sample_interval = 0.5;
        CnsSeries s = cns_run(cfg);

        double worst = 0.0;
        for (size_t i = 0; i < s.times.size(); ++i) {
            if (s.times[i] < 10.0 || s.times[i] > 1000.0) continue;
            double ref = closed_form_theta_av(s.times[i], cfg);
            worst = std::max(worst, std::fabs(s.theta_av[i] / ref - 1.0));
        }
        char label[96];
        std::snprintf(label, sizeof label, "delta = %.2g: worst deviation on [10, 1e3]",
                      delta);
        check(worst <= 0.05, label, worst, "<= 0.05");

        double target = 1.0 / (1.0 + delta);
        double slope = slope_at(s.times, s.theta_av, 1000.0, 0.25);
        // pinned oracle: the local slope of (C1 t + 1)^{1/(1+delta)} at t = 1e3
        // (0.4954 for delta = 1, 0.6585 for delta = 0.5) lies inside the band
        std::snprintf(label, sizeof label, "delta = %.2g: late-time slope vs %.4g", delta,
                      target);
        check(std::fabs(slope - target) <= 0.02, label, slope, "within 0.02");
    }
    return g_failures;
}

int criterion_6() {
    std::puts("criterion 6: steady incompressible solver certificates");
    {
        SteadyNsConfig cfg;  // nu = 1, N = 16
        cfg.force = shear_force(cfg.N, 1.0);
        SteadyNsResult res = solve_steady(cfg);
        double amp = 2.0 * std::abs(res.u.at(1, 0, 0, 2));
        double expect = 1.0 / (4.0 * M_PI * M_PI);
        check(res.converged, "shear solve converged", res.iterations, "true");
        check(std::fabs(amp - expect) <= 1e-10, "shear amplitude vs 1/(4 pi^2 nu)",
              std::fabs(amp - expect), "<= 1e-10");
        double obs_err = std::fabs(res.obstruction - expect);
        check(obs_err <= 1e-8, "viscous heating obstruction vs 1/(4 pi^2)", obs_err,
              "<= 1e-8");
        double th = nsf_theta(res.u);
        check(th <= 1e-10, "temperature fixed point ||theta||", th, "<= 1e-10");
    }
    {
        bool all_margins = true, all_converged = true, all_geometric = true;
        double worst_margin = 1e300;
        for (int trial = 0; trial < 20; ++trial) {
            SteadyNsConfig cfg;
            cfg.N = 8;
            cfg.force = random_divfree_force(8, 3, 0.02 + 0.002 * trial, 1000 + trial);
            SteadyNsResult res = solve_steady(cfg);
            all_converged = all_converged && res.converged;
            worst_margin = std::min(worst_margin, res.energy_margin);
            all_margins = all_margins && res.energy_margin >= 0.0;
            for (size_t i = 1; i + 1 < res.update_ratios.size(); ++i)
                all_geometric = all_geometric && res.update_ratios[i] < 0.9;
        }
        check(all_converged, "20 random small forces converged", 20, "all");
        check(all_geometric, "Picard update ratios stay below 0.9", 0.9, "geometric");
        check(all_margins, "energy bound margin", worst_margin, ">= 0");
    }
    return g_failures;
}

int criterion_7() {
    std::puts("criterion 7: particle solver properties");
    {
        DsmcConfig cfg;
        cfg.n_cells = 10;
        cfg.particles_per_cell = 300;
        Rng rng(77);
        ParticleEnsemble p = init_ensemble(cfg, rng);
        double m2 = 0, e = 0;
        for (int i = 0; i < p.n(); ++i) {
            m2 += p.v2[i];
            e += p.v1[i] * p.v1[i] + p.v2[i] * p.v2[i] + p.v3[i] * p.v3[i];
        }
        std::vector<double> majorant(cfg.n_cells, 6.0), carry(cfg.n_cells, 0.0);
        collide_cells(p, cfg, majorant, carry, rng);
        double m2b = 0, eb = 0;
        for (int i = 0; i < p.n(); ++i) {
            m2b += p.v2[i];
            eb += p.v1[i] * p.v1[i] + p.v2[i] * p.v2[i] + p.v3[i] * p.v3[i];
        }
        double p_err = std::fabs(m2b - m2) / p.n();
        double e_err = std::fabs(eb / e - 1.0);
        check(p_err <= 1e-13, "collision momentum drift per particle", p_err, "<= 1e-13");
        check(e_err <= 1e-13, "collision energy drift, relative", e_err, "<= 1e-13");
    }
    {
        DsmcConfig cfg;
        cfg.f0 = 0.0;
        cfg.t_end = 30.0;
        cfg.sample_interval = 10.0;
        DsmcSeries s = run_single(cfg, 4242);
        double rate = 2.0 * static_cast<double>(s.collision_count) /
                      (cfg.n_cells * cfg.particles_per_cell * s.sim_time_total);
        double oracle = equilibrium_collision_rate(cfg.kn, 1.0, 1.0, cfg.particles_per_cell);
        double rel = std::fabs(rate / oracle - 1.0);
        check(rel <= 0.05, "equilibrium collision rate vs hard-sphere oracle", rel,
              "<= 0.05");

        // distribution stays Maxwellian: pool the three axes of the final state
        DsmcConfig snap = cfg;
        snap.t_end = 10.0;
        Rng rng(4243);
        ParticleEnsemble p = init_ensemble(snap, rng);
        std::vector<double> maj(snap.n_cells, 6.0), carry(snap.n_cells, 0.0);
        double t = 0;
        while (t < snap.t_end - 1e-12) {
            move_and_reflect(p, snap.f0, snap.dt);
            collide_cells(p, snap, maj, carry, rng);
            t += snap.dt;
        }
        std::vector<double> pooled;
        pooled.insert(pooled.end(), p.v1.begin(), p.v1.end());
        pooled.insert(pooled.end(), p.v2.begin(), p.v2.end());
        pooled.insert(pooled.end(), p.v3.begin(), p.v3.end());
        double pval = maxwellian_chi_square_pvalue(pooled);
        check(pval > 0.01, "chi-square p-value of the relaxed state", pval, "> 0.01");
    }
    {
        DsmcConfig cfg;  // kn = 0.1, f0 = 2, 8 runs, t_end = 300/sqrt(2)
        RunAverager agg = run_ensemble(cfg);

        // monotone decelerating growth of the ensemble mean (coarse grid)
        bool monotone = true;
        std::vector<double> coarse_t, coarse_v;
        for (size_t i = 0; i < agg.times.size(); i += 40) {
            coarse_t.push_back(agg.times[i]);
            coarse_v.push_back(agg.theta_mean[i]);
        }
        for (size_t i = 1; i < coarse_v.size(); ++i)
            monotone = monotone && coarse_v[i] > coarse_v[i - 1];
        check(monotone, "ensemble theta_av grows monotonically", coarse_v.back(),
              "increasing");
        size_t m = coarse_v.size();
        double d1 = coarse_v[m / 2] - coarse_v.front();
        double d2 = coarse_v.back() - coarse_v[m / 2];
        check(d2 < d1, "growth decelerates over the horizon", d2 / d1, "< 1");

        BgkConfig bcfg;
        bcfg.grid.n_cells = 50;
        bcfg.vgrid.n_v1 = 32;
        bcfg.vgrid.n_v2 = 32;
        bcfg.t_end = cfg.t_end;
        bcfg.sample_interval = cfg.sample_interval;
        BgkSolver bgk(bcfg);
        TimeSeries bs = bgk.run();

        std::vector<double> la, lb;
        for (size_t i = 0; i < agg.times.size(); ++i) {
            if (agg.times[i] <= 0.0) continue;
            la.push_back(std::log(agg.theta_mean[i]));
            lb.push_back(std::log(at_time(bs.times, bs.theta_av, agg.times[i])));
        }
        double corr = correlation(la, lb);
        check(corr >= 0.99, "ln theta_av correlation against the kinetic series", corr,
              ">= 0.99");
    }
    return g_failures;
}

int criterion_8() {
    std::puts("criterion 8: exponent fitter");
    {
        std::vector<double> t, v;
        for (int i = 0; i <= 600; ++i) {
            t.push_back(std::pow(10.0, 4.0 * i / 600.0));
            v.push_back(2.3 * std::pow(t.back(), 0.66));
        }
        auto a = loglog_slope(t, v, 0.25);
        double worst = 0;
        for (double s : a) worst = std::max(worst, std::fabs(s - 0.66));
        // rounding floor of the windowed LSQ on ln values up to ln(1e4)
        check(worst <= 1e-10, "pure power law t^0.66 recovered exactly", worst, "<= 1e-10");
    }
    {
        std::vector<double> t, v;
        for (int i = 0; i <= 900; ++i) {
            t.push_back(std::pow(10.0, 6.0 * i / 900.0));
            v.push_back(std::sqrt(t.back() + 1.0));
        }
        double s = slope_at(t, v, 1e6, 0.25);
        check(std::fabs(s - 0.5) <= 1e-3, "sqrt(t+1) asymptote at t = 1e6", s,
              "within 1e-3 of 0.5");
    }
    {
        // derived synthetic-noise case: 1% multiplicative noise, 300 samples
        // per decade; fitted slope within 0.03 of the local analytic exponent
        std::vector<double> t, v;
        Rng rng(20260814);
        int n = static_cast<int>(300 * 4);
        for (int i = 0; i <= n; ++i) {
            t.push_back(std::pow(10.0, 4.0 * i / n));
            double noise = 1.0 + 0.01 * (2.0 * rng.uniform01() - 1.0);
            v.push_back(std::pow(t.back() + 1.0, 0.66) * noise);
        }
        auto a = loglog_slope(t, v, 0.3);
        double worst = 0;
        for (size_t i = 0; i < a.size(); ++i) {
            double expected = 0.66 * t[i] / (t[i] + 1.0);
            worst = std::max(worst, std::fabs(a[i] - expected));
        }
        check(worst <= 0.03, "1% noise: slope error vs local exponent", worst, "<= 0.03");
    }
    return g_failures;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::fprintf(stderr, "usage: acceptance <criterion 1..8>\n");
        return 2;
    }
    int n = std::atoi(argv[1]);
    int (*table[])() = {criterion_1, criterion_2, criterion_3, criterion_4,
                        criterion_5, criterion_6, criterion_7, criterion_8};
    if (n < 1 || n > 8) {
        std::fprintf(stderr, "no such criterion: %s\n", argv[1]);
        return 2;
    }
    try {
        table[n - 1]();
    } catch (const std::exception& e) {
        std::printf("  FAIL unexpected exception: %s\n", e.what());
        ++g_failures;
    }
    std::printf("criterion %d: %s\n", n, g_failures == 0 ? "PASS" : "FAIL");
    return g_failures == 0 ? 0 : 1;
}
