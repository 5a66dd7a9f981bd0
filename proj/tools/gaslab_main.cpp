#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"

#include "gaslab/bgk.hpp"
#include "gaslab/cli.hpp"
#include "gaslab/config.hpp"
#include "gaslab/run_io.hpp"
#include "gaslab/steady_ns.hpp"

int main(int argc, char** argv) {
    CLI::App app{"gas dynamics laboratory: kinetic, particle and continuum solvers"};
    app.set_version_flag("--version", std::string(gaslab::kVersion));
    app.require_subcommand(1);

    gaslab::MomentsVerifyOptions mv_opt;
    auto* mv = app.add_subcommand("moments-verify",
                                  "verify the Gaussian closure identities by quadrature");
    mv->add_option("--nodes", mv_opt.nodes, "quadrature nodes per axis");
    mv->add_option("--scheme", mv_opt.scheme, "gauss_hermite | trapezoid");
    mv->add_option("--radius", mv_opt.radius, "truncation radius (trapezoid scheme)");
    mv->add_option("--tol", mv_opt.tol, "pass tolerance");
    mv->add_option("--alpha", mv_opt.alpha, "radial weight on A: one | r2 | exp-r");
    mv->add_option("--beta", mv_opt.beta, "radial weight on B: one | r2 | exp-r");
    mv->add_option("--out", mv_opt.out_root, "output root directory");

    std::string bgk_cfg, bgk_out = "out", bgk_resume;
    auto* bgk = app.add_subcommand("bgk", "deterministic kinetic solver");
    bgk->require_subcommand(1);
    auto* bgk_run = bgk->add_subcommand("run", "advance to t_end, writing series and snapshots");
    bgk_run->add_option("--config", bgk_cfg, "flat key=value config file")->required();
    bgk_run->add_option("--out", bgk_out, "output root directory");
    bgk_run->add_option("--resume", bgk_resume, "checkpoint file to resume from");

    std::string dsmc_cfg, dsmc_out = "out";
    auto* dsmc = app.add_subcommand("dsmc", "hard-sphere particle solver");
    dsmc->require_subcommand(1);
    auto* dsmc_run = dsmc->add_subcommand("run", "run the ensemble and aggregate");
    dsmc_run->add_option("--config", dsmc_cfg, "flat key=value config file")->required();
    dsmc_run->add_option("--out", dsmc_out, "output root directory");

    std::string cns_cfg, cns_out = "out";
    auto* cns = app.add_subcommand("cns", "reduced compressible Navier-Stokes model");
    cns->require_subcommand(1);
    auto* cns_run = cns->add_subcommand("run", "advance to t_end against the closed form");
    cns_run->add_option("--config", cns_cfg, "flat key=value config file")->required();
    cns_run->add_option("--out", cns_out, "output root directory");

    std::string ns_cfg, ns_out = "out";
    auto* ns = app.add_subcommand("steady-ns", "steady incompressible solver on the torus");
    ns->require_subcommand(1);
    auto* ns_solve = ns->add_subcommand("solve", "damped Picard iteration with certificates");
    ns_solve->add_option("--config", ns_cfg, "flat key=value config file")->required();
    ns_solve->add_option("--out", ns_out, "output root directory");

    std::string fit_in, fit_field = "theta_av", fit_out = "slopes.csv";
    double fit_window = 0.25, fit_avg = 353.5533905932738;  // 500/sqrt(2)
    auto* fit = app.add_subcommand("fit", "post-processing fits");
    fit->require_subcommand(1);
    auto* fit_slope = fit->add_subcommand("slope", "windowed log-log growth exponents");
    fit_slope->add_option("--input", fit_in, "series CSV with a 't' column")->required();
    fit_slope->add_option("--field", fit_field, "column to fit alpha on");
    fit_slope->add_option("--window", fit_window, "window width in decades");
    fit_slope->add_option("--avg-window", fit_avg, "trailing time window for beta_bar");
    fit_slope->add_option("--output", fit_out, "output CSV path");

    std::string plot_dir;
    auto* ep = app.add_subcommand("emit-plots", "write plot scripts for a run directory");
    ep->add_option("dir", plot_dir, "run directory containing the CSVs")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? gaslab::kExitOk : gaslab::kExitConfig;
    }

    try {
        if (mv->parsed()) return gaslab::cli_moments_verify(mv_opt);
        if (bgk_run->parsed()) return gaslab::cli_bgk_run(bgk_cfg, bgk_out, bgk_resume);
        if (dsmc_run->parsed()) return gaslab::cli_dsmc_run(dsmc_cfg, dsmc_out);
        if (cns_run->parsed()) return gaslab::cli_cns_run(cns_cfg, cns_out);
        if (ns_solve->parsed()) return gaslab::cli_steady_ns_solve(ns_cfg, ns_out);
        if (fit_slope->parsed())
            return gaslab::cli_fit_slope(fit_in, fit_field, fit_window, fit_avg, fit_out);
        if (ep->parsed()) return gaslab::cli_emit_plots(plot_dir);
    } catch (const gaslab::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return gaslab::kExitConfig;
    } catch (const gaslab::NonConvergence& e) {
        std::fprintf(stderr, "non-convergence: %s\n", e.what());
        return gaslab::kExitNonConvergence;
    } catch (const gaslab::NumericalError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return gaslab::kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return gaslab::kExitConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return gaslab::kExitNumerical;
    }
    return gaslab::kExitConfig;
}
