#include "gaslab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <limits>
#include <sstream>

#include "gaslab/bgk.hpp"
#include "gaslab/checkpoint.hpp"
#include "gaslab/config.hpp"
#include "gaslab/diagnostics.hpp"
#include "gaslab/dsmc.hpp"
#include "gaslab/gauss_moments.hpp"
#include "gaslab/run_io.hpp"
#include "gaslab/steady_ns.hpp"

namespace fs = std::filesystem;

namespace gaslab {

namespace {

void add_output(RunManifest& man, const std::string& dir, const std::string& rel) {
    man.outputs.emplace_back(rel, sha256_file(dir + "/" + rel));
}

void finish_manifest(RunManifest& man, const std::string& dir) {
    man.end_time = iso_utc_now();
    man.write(dir);
}

IsotropicWeight named_weight(const std::string& name) {
    if (name == "one") return {"one", [](double) { return 1.0; }};
    if (name == "r2") return {"r2", [](double r) { return r * r; }};
    if (name == "exp-r") return {"exp-r", [](double r) { return std::exp(-r); }};
    throw ConfigError("unknown weight '" + name + "' (want one | r2 | exp-r)");
}

std::vector<double> u2_like_column(const CsvTable& t, std::string* which) {
    for (const char* name : {"u2_av", "u2_av_mean", "u2_amplitude"})
        if (t.has_column(name)) {
            if (which) *which = name;
            return t.column(name);
        }
    if (which) which->clear();
    return {};
}

}  // namespace

// ---------------------------------------------------------------------------
// moments-verify
// ---------------------------------------------------------------------------

int cli_moments_verify(const MomentsVerifyOptions& opt) {
    QuadratureSpec spec;
    spec.nodes_per_axis = opt.nodes;
    spec.truncation_radius = opt.radius;
    if (opt.scheme == "gauss_hermite")
        spec.scheme = QuadScheme::gauss_hermite;
    else if (opt.scheme == "trapezoid")
        spec.scheme = QuadScheme::trapezoid_truncated;
    else
        throw ConfigError("unknown scheme '" + opt.scheme +
                          "' (want gauss_hermite | trapezoid)");
    spec.validate();
    if (opt.tol <= 0) throw ConfigError("tol: must be > 0");

    std::vector<LemmaReport> reports =
        verify_appendix(named_weight(opt.alpha), named_weight(opt.beta), spec, opt.tol);

    std::string dir = make_run_dir(opt.out_root, "moments-verify");
    RunManifest man;
    man.subcommand = "moments-verify";
    man.start_time = iso_utc_now();
    {
        std::ostringstream cfg;
        cfg << "nodes = " << opt.nodes << "\n"
            << "scheme = " << opt.scheme << "\n"
            << "radius = " << format_double(opt.radius) << "\n"
            << "tol = " << format_double(opt.tol) << "\n"
            << "alpha = " << opt.alpha << "\n"
            << "beta = " << opt.beta << "\n";
        man.config_text = cfg.str();
        write_text_file(dir + "/config.txt", man.config_text);
    }

    bool all_ok = true;
    {
        CsvWriter csv(dir + "/lemmas.csv",
                      {"identity", "max_abs_error", "tolerance", "passed"});
        std::printf("%-34s %13s %10s  %s\n", "identity", "max_abs_error", "tolerance",
                    "passed");
        for (const auto& r : reports) {
            all_ok = all_ok && r.passed;
            std::printf("%-34s %13.3e %10.1e  %s\n", r.identity_name.c_str(),
                        r.max_abs_error, r.tolerance, r.passed ? "yes" : "NO");
            csv.row_mixed({r.identity_name, format_double(r.max_abs_error),
                           format_double(r.tolerance), r.passed ? "1" : "0"});
        }
        csv.close();
    }
    for (const auto& r : reports) {
        if (std::isfinite(r.nu_value)) man.notes.push_back("nu = " + format_double(r.nu_value));
        if (std::isfinite(r.kappa_value))
            man.notes.push_back("kappa = " + format_double(r.kappa_value));
        if (std::isfinite(r.c_value)) man.notes.push_back("c = " + format_double(r.c_value));
    }
    add_output(man, dir, "config.txt");
    add_output(man, dir, "lemmas.csv");
    finish_manifest(man, dir);
    std::printf("run dir: %s\n", dir.c_str());
    return all_ok ? kExitOk : kExitNumerical;
}

// ---------------------------------------------------------------------------
// bgk run
// ---------------------------------------------------------------------------

int cli_bgk_run(const std::string& config_path, const std::string& out_root,
                const std::string& resume_path) {
    ConfigMap cm = ConfigMap::parse_file(config_path);
    BgkConfig cfg = bgk_config_from(cm);
    std::string dir = make_run_dir(out_root, "bgk-run");
    if (cfg.checkpoint_interval > 0 && cfg.checkpoint_path.empty())
        cfg.checkpoint_path = dir + "/checkpoint.bin";

    RunManifest man;
    man.subcommand = "bgk run";
    man.start_time = iso_utc_now();
    man.config_text = render_config(cfg);
    write_text_file(dir + "/config.txt", man.config_text);

    BgkSolver solver(cfg);
    if (!resume_path.empty()) {
        load_checkpoint(resume_path, solver);
        man.notes.push_back("resumed from " + resume_path + " at t=" +
                            format_double(solver.state().time));
    }
    TimeSeries ts = solver.run();

    {
        CsvWriter csv(dir + "/series.csv", {"t", "theta_av", "u2_av", "entropy", "mass"});
        for (size_t i = 0; i < ts.times.size(); ++i)
            csv.row({ts.times[i], ts.theta_av[i], ts.u2_av[i], ts.entropy[i], ts.mass[i]});
        csv.close();
    }
    add_output(man, dir, "config.txt");
    add_output(man, dir, "series.csv");
    const auto& grid = cfg.grid;
    for (size_t s = 0; s < ts.snapshots.size(); ++s) {
        std::string rel = "snapshot_" + std::to_string(s) + ".csv";
        const MacroFields& m = ts.snapshots[s].second;
        CsvWriter csv(dir + "/" + rel, {"x1", "rho", "u1", "u2", "theta"});
        for (int i = 0; i < m.n_cells(); ++i)
            csv.row({grid.center(i), m.rho[i], m.u1[i], m.u2[i], m.theta[i]});
        csv.close();
        man.notes.push_back(rel + " t=" + format_double(ts.snapshots[s].first));
        add_output(man, dir, rel);
    }
    if (!cfg.checkpoint_path.empty() && fs::exists(cfg.checkpoint_path)) {
        man.notes.push_back("checkpoint: " + cfg.checkpoint_path);
    }
    for (const auto& ev : solver.remaps()) {
        std::ostringstream os;
        os << "remap t=" << format_double(ev.time) << " scale " << format_double(ev.scale_old)
           << " -> " << format_double(ev.scale_new) << " (" << ev.reason << ")"
           << " defects mass=" << format_double(ev.mass_defect)
           << " momentum=" << format_double(ev.momentum_defect)
           << " energy=" << format_double(ev.energy_defect);
        man.notes.push_back(os.str());
    }
    if (solver.positivity_clips() > 0)
        man.notes.push_back("positivity clips: " + std::to_string(solver.positivity_clips()));
    finish_manifest(man, dir);

    std::printf("t_end=%s theta_av=%.6f u2_av=%.3e mass=%.12f remaps=%zu\n",
                format_double(ts.times.back()).c_str(), ts.theta_av.back(),
                ts.u2_av.back(), ts.mass.back(), solver.remaps().size());
    std::printf("run dir: %s\n", dir.c_str());
    return kExitOk;
}

// ---------------------------------------------------------------------------
// dsmc run
// ---------------------------------------------------------------------------

int cli_dsmc_run(const std::string& config_path, const std::string& out_root) {
    ConfigMap cm = ConfigMap::parse_file(config_path);
    DsmcConfig cfg = dsmc_config_from(cm);
    std::string dir = make_run_dir(out_root, "dsmc-run");

    RunManifest man;
    man.subcommand = "dsmc run";
    man.start_time = iso_utc_now();
    man.config_text = render_config(cfg);
    write_text_file(dir + "/config.txt", man.config_text);
    add_output(man, dir, "config.txt");

    RunAverager agg = run_ensemble(cfg);
    for (size_t r = 0; r < agg.theta_runs.size(); ++r) {
        std::string rel = "run_" + std::to_string(r) + ".csv";
        CsvWriter csv(dir + "/" + rel, {"t", "theta_av", "u2_av"});
        for (size_t i = 0; i < agg.times.size(); ++i)
            csv.row({agg.times[i], agg.theta_runs[r][i], agg.u2_runs[r][i]});
        csv.close();
        add_output(man, dir, rel);
        man.notes.push_back(rel + " seed=" + std::to_string(agg.seeds[r]));
    }
    {
        std::vector<std::string> cols = {"t", "theta_av_mean", "theta_av_se", "u2_av_mean",
                                         "u2_av_se"};
        bool tavg = cfg.time_avg_window > 0;
        if (tavg) {
            cols.push_back("theta_av_mean_tavg");
            cols.push_back("u2_av_mean_tavg");
        }
        CsvWriter csv(dir + "/aggregate.csv", cols);
        for (size_t i = 0; i < agg.times.size(); ++i) {
            std::vector<double> row = {agg.times[i], agg.theta_mean[i], agg.theta_se[i],
                                       agg.u2_mean[i], agg.u2_se[i]};
            if (tavg) {
                row.push_back(agg.theta_mean_tavg[i]);
                row.push_back(agg.u2_mean_tavg[i]);
            }
            csv.row(row);
        }
        csv.close();
        add_output(man, dir, "aggregate.csv");
    }
    man.notes.push_back("workers: " + std::to_string(env_worker_count()));
    finish_manifest(man, dir);
    std::printf("runs=%d t_end=%s theta_av_mean=%.4f +/- %.4f\n", cfg.n_ensemble,
                format_double(agg.times.back()).c_str(), agg.theta_mean.back(),
                agg.theta_se.back());
    std::printf("run dir: %s\n", dir.c_str());
    return kExitOk;
}

// ---------------------------------------------------------------------------
// cns run
// ---------------------------------------------------------------------------

int cli_cns_run(const std::string& config_path, const std::string& out_root) {
    ConfigMap cm = ConfigMap::parse_file(config_path);
    CnsConfig cfg = cns_config_from(cm);
    std::string dir = make_run_dir(out_root, "cns-run");

    RunManifest man;
    man.subcommand = "cns run";
    man.start_time = iso_utc_now();
    man.config_text = render_config(cfg);
    write_text_file(dir + "/config.txt", man.config_text);
    add_output(man, dir, "config.txt");

    CnsSeries s = cns_run(cfg);
    std::vector<double> fit_t;
    std::vector<double> alpha = loglog_slope(s.times, s.theta_av, 0.25, &fit_t);
    {
        CsvWriter csv(dir + "/series.csv", {"t", "theta_av", "u2_amplitude",
                                            "slope_estimate", "theta_av_closed",
                                            "rel_error"});
        size_t j = 0;
        for (size_t i = 0; i < s.times.size(); ++i) {
            double sl = std::numeric_limits<double>::quiet_NaN();
            if (s.times[i] > 0 && j < fit_t.size()) {
                sl = alpha[j];
                ++j;
            }
            double closed = closed_form_theta_av(s.times[i], cfg);
            csv.row({s.times[i], s.theta_av[i], s.u2_amplitude[i], sl, closed,
                     std::fabs(s.theta_av[i] - closed) / closed});
        }
        csv.close();
        add_output(man, dir, "series.csv");
    }
    finish_manifest(man, dir);
    double closed_end = closed_form_theta_av(s.times.back(), cfg);
    std::printf("t_end=%s theta_av=%.6f closed_form=%.6f slope=%.4f\n",
                format_double(s.times.back()).c_str(), s.theta_av.back(), closed_end,
                alpha.back());
    std::printf("run dir: %s\n", dir.c_str());
    return kExitOk;
}

// ---------------------------------------------------------------------------
// steady-ns solve
// ---------------------------------------------------------------------------

int cli_steady_ns_solve(const std::string& config_path, const std::string& out_root) {
    ConfigMap cm = ConfigMap::parse_file(config_path);
    SteadyNsConfig cfg = steady_ns_config_from(cm);
    std::string dir = make_run_dir(out_root, "steady-ns-solve");

    RunManifest man;
    man.subcommand = "steady-ns solve";
    man.start_time = iso_utc_now();
    man.config_text = render_config(cfg);
    write_text_file(dir + "/config.txt", man.config_text);
    add_output(man, dir, "config.txt");

    SteadyNsResult res = solve_steady(cfg);
    {
        CsvWriter csv(dir + "/solution.csv",
                      {"kx", "ky", "kz", "re1", "im1", "re2", "im2", "re3", "im3"});
        for (int kx = -res.u.N; kx <= res.u.N; ++kx)
            for (int ky = -res.u.N; ky <= res.u.N; ++ky)
                for (int kz = -res.u.N; kz <= res.u.N; ++kz) {
                    const auto& c0 = res.u.at(kx, ky, kz, 0);
                    const auto& c1 = res.u.at(kx, ky, kz, 1);
                    const auto& c2 = res.u.at(kx, ky, kz, 2);
                    if (c0 == std::complex<double>() && c1 == std::complex<double>() &&
                        c2 == std::complex<double>())
                        continue;
                    csv.row({static_cast<double>(kx), static_cast<double>(ky),
                             static_cast<double>(kz), c0.real(), c0.imag(), c1.real(),
                             c1.imag(), c2.real(), c2.imag()});
                }
        csv.close();
        add_output(man, dir, "solution.csv");
    }
    {
        CsvWriter csv(dir + "/residuals.csv", {"iter", "residual", "update_ratio"});
        for (size_t i = 0; i < res.residual_history.size(); ++i) {
            double ratio = i >= 1 && i - 1 < res.update_ratios.size()
                               ? res.update_ratios[i - 1]
                               : std::numeric_limits<double>::quiet_NaN();
            csv.row({static_cast<double>(i + 1), res.residual_history[i], ratio});
        }
        csv.close();
        add_output(man, dir, "residuals.csv");
    }
    {
        std::ostringstream cert;
        cert << "converged: " << (res.converged ? "yes" : "no") << "\n"
             << "iterations: " << res.iterations << "\n"
             << "residual: " << format_double(res.residual) << "\n"
             << "smallness_held: " << (res.smallness_held ? "yes" : "no") << "\n"
             << "force_hminus1: " << format_double(res.force_hminus1) << "\n"
             << "grad_norm: " << format_double(res.grad_norm) << "\n"
             << "energy_margin: " << format_double(res.energy_margin) << "\n"
             << "obstruction: " << format_double(res.obstruction) << "\n";
        write_text_file(dir + "/certificate.txt", cert.str());
        add_output(man, dir, "certificate.txt");
    }
    finish_manifest(man, dir);
    std::printf("converged=%s iterations=%d residual=%.3e obstruction=%.10f\n",
                res.converged ? "yes" : "no", res.iterations, res.residual,
                res.obstruction);
    std::printf("run dir: %s\n", dir.c_str());
    return res.converged ? kExitOk : kExitNonConvergence;
}

// ---------------------------------------------------------------------------
// fit slope
// ---------------------------------------------------------------------------

int cli_fit_slope(const std::string& input_csv, const std::string& field, double window,
                  double avg_window, const std::string& out_path) {
    CsvTable t = read_csv(input_csv);
    if (!t.has_column("t")) throw ConfigError(input_csv + ": missing column 't'");
    if (!t.has_column(field)) throw ConfigError(input_csv + ": missing column '" + field + "'");
    std::vector<double> times = t.column("t");
    std::vector<double> values = t.column(field);

    std::vector<double> fit_t;
    std::vector<double> alpha = loglog_slope(times, values, window, &fit_t);

    std::string u2_name;
    std::vector<double> u2 = u2_like_column(t, &u2_name);
    std::vector<double> beta, beta_bar;
    if (!u2.empty() && u2_name != field) {
        std::vector<double> bt;
        beta = loglog_slope(times, u2, window, &bt);
        beta_bar = trailing_average(bt, beta, avg_window);
    }

    CsvWriter csv(out_path, {"t", "alpha", "beta", "beta_bar"});
    for (size_t i = 0; i < fit_t.size(); ++i) {
        double b = i < beta.size() ? beta[i] : std::numeric_limits<double>::quiet_NaN();
        double bb =
            i < beta_bar.size() ? beta_bar[i] : std::numeric_limits<double>::quiet_NaN();
        csv.row({fit_t[i], alpha[i], b, bb});
    }
    csv.close();
    std::printf("fitted %zu points; final alpha=%.4f", fit_t.size(),
                alpha.empty() ? 0.0 : alpha.back());
    if (!beta.empty()) std::printf(" beta=%.4f beta_bar=%.4f", beta.back(), beta_bar.back());
    std::printf("\nwrote %s\n", out_path.c_str());
    return kExitOk;
}

// ---------------------------------------------------------------------------
// emit-plots
// ---------------------------------------------------------------------------

namespace {

const char* kPlotPrelude = R"PY(#!/usr/bin/env python3
import csv, glob, math, os
import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

HERE = os.path.dirname(os.path.abspath(__file__))

def load(name):
    with open(os.path.join(HERE, "..", name)) as f:
        rows = list(csv.reader(f))
    cols = {c: i for i, c in enumerate(rows[0])}
    return {c: [float(r[i]) if r[i] else float("nan") for r in rows[1:]]
            for c, i in cols.items()}

def slope_series(ts, vs, win=0.25):
    pts = [(math.log10(t), math.log(v)) for t, v in zip(ts, vs) if t > 0 and v > 0]
    out_t, out_s = [], []
    for lt, lv in pts:
        sel = [(a, b) for a, b in pts if abs(a - lt) <= win / 2]
        n = len(sel)
        sx = sum(a for a, _ in sel); sy = sum(b for _, b in sel)
        sxx = sum(a * a for a, _ in sel); sxy = sum(a * b for a, b in sel)
        den = n * sxx - sx * sx
        if den == 0:
            continue
        out_t.append(10 ** lt)
        out_s.append((n * sxy - sx * sy) / den / math.log(10))
    return out_t, out_s

def snapshots():
    out = []
    for path in sorted(glob.glob(os.path.join(HERE, "..", "snapshot_*.csv"))):
        out.append((os.path.basename(path), load(os.path.basename(path))))
    return out
)PY";

struct PlotScript {
    const char* file;
    std::vector<const char*> needs;  // columns required in series.csv
    const char* body;
};

const PlotScript kBgkPlots[] = {
    {"a_u2_profiles.py",
     {},
     R"PY(
snaps = snapshots()
if not snaps:
    print("no snapshot_*.csv files; nothing to plot")
else:
    for name, d in snaps:
        plt.plot(d["x1"], d["u2"], label=name)
    plt.xlabel("x1"); plt.ylabel("u2"); plt.legend(fontsize=6)
    plt.title("u2 profiles")
    plt.savefig(os.path.join(HERE, "a_u2_profiles.png"), dpi=150)
    print("wrote a_u2_profiles.png")
)PY"},
    {"b_theta_av.py",
     {"t", "theta_av"},
     R"PY(
d = load("series.csv")
plt.plot(d["t"], d["theta_av"])
plt.xlabel("t"); plt.ylabel("theta_av")
plt.title("average temperature growth")
plt.savefig(os.path.join(HERE, "b_theta_av.png"), dpi=150)
print("wrote b_theta_av.png")
)PY"},
    {"c_theta_profiles.py",
     {},
     R"PY(
snaps = snapshots()
if not snaps:
    print("no snapshot_*.csv files; nothing to plot")
else:
    for name, d in snaps:
        av = sum(d["theta"]) / len(d["theta"])
        plt.plot(d["x1"], [v - av for v in d["theta"]], label=name)
    plt.xlabel("x1"); plt.ylabel("theta - theta_av"); plt.legend(fontsize=6)
    plt.title("temperature deviation profiles")
    plt.savefig(os.path.join(HERE, "c_theta_profiles.png"), dpi=150)
    print("wrote c_theta_profiles.png")
)PY"},
    {"d_loglog_theta.py",
     {"t", "theta_av"},
     R"PY(
d = load("series.csv")
ts = [t for t, v in zip(d["t"], d["theta_av"]) if t > 0 and v > 0]
vs = [v for t, v in zip(d["t"], d["theta_av"]) if t > 0 and v > 0]
plt.loglog(ts, vs)
plt.xlabel("t"); plt.ylabel("theta_av")
plt.title("theta_av, log-log")
plt.savefig(os.path.join(HERE, "d_loglog_theta.png"), dpi=150)
print("wrote d_loglog_theta.png")
)PY"},
    {"e_alpha.py",
     {"t", "theta_av"},
     R"PY(
d = load("series.csv")
ts, al = slope_series(d["t"], d["theta_av"])
plt.semilogx(ts, al)
plt.xlabel("t"); plt.ylabel("alpha")
plt.title("local growth exponent of theta_av")
plt.savefig(os.path.join(HERE, "e_alpha.png"), dpi=150)
print("wrote e_alpha.png")
)PY"},
    {"f_loglog_u2.py",
     {"t", "__u2__"},
     R"PY(
d = load("series.csv")
u2 = d[U2COL]
ts = [t for t, v in zip(d["t"], u2) if t > 0 and v > 0]
vs = [v for t, v in zip(d["t"], u2) if t > 0 and v > 0]
plt.loglog(ts, vs)
plt.xlabel("t"); plt.ylabel(U2COL)
plt.title("flow speed, log-log")
plt.savefig(os.path.join(HERE, "f_loglog_u2.png"), dpi=150)
print("wrote f_loglog_u2.png")
)PY"},
    {"g_beta.py",
     {"t", "__u2__"},
     R"PY(
d = load("series.csv")
ts, be = slope_series(d["t"], d[U2COL])
plt.semilogx(ts, be)
plt.xlabel("t"); plt.ylabel("beta")
plt.title("local decay exponent of the flow speed")
plt.savefig(os.path.join(HERE, "g_beta.png"), dpi=150)
print("wrote g_beta.png")
)PY"},
};

const char* kAggPlot = R"PY(
d = load("aggregate.csv")
plt.errorbar(d["t"], d["theta_av_mean"], yerr=[2 * s for s in d["theta_av_se"]],
             errorevery=max(1, len(d["t"]) // 50), capsize=2)
plt.xlabel("t"); plt.ylabel("theta_av (ensemble mean, 2 s.e.)")
plt.title("ensemble temperature growth")
plt.savefig(os.path.join(HERE, "agg_theta_errorbars.png"), dpi=150)
print("wrote agg_theta_errorbars.png")
)PY";

}  // namespace

int cli_emit_plots(const std::string& run_dir) {
    if (!fs::is_directory(run_dir)) throw ConfigError("not a directory: " + run_dir);
    bool have_series = fs::exists(run_dir + "/series.csv");
    bool have_agg = fs::exists(run_dir + "/aggregate.csv");
    bool have_snaps = false;
    for (const auto& e : fs::directory_iterator(run_dir)) {
        std::string name = e.path().filename().string();
        if (name.rfind("snapshot_", 0) == 0 && name.size() > 4 &&
            name.substr(name.size() - 4) == ".csv")
            have_snaps = true;
    }
    if (!have_series && !have_agg && !have_snaps) {
        std::fprintf(stderr, "warning: no series CSVs in %s; nothing to do\n",
                     run_dir.c_str());
        return kExitOk;
    }
    fs::create_directories(run_dir + "/plots");
    int written = 0;

    if (have_series || have_snaps) {
        CsvTable series;
        std::string u2col;
        if (have_series) {
            series = read_csv(run_dir + "/series.csv");
            u2_like_column(series, &u2col);
        }
        for (const auto& p : kBgkPlots) {
            bool profile_plot = p.needs.empty();
            if (profile_plot && !have_snaps) continue;
            if (!profile_plot) {
                if (!have_series) continue;
                bool ok = true;
                for (const char* col : p.needs) {
                    std::string want = col;
                    if (want == "__u2__") {
                        if (u2col.empty())
                            throw ConfigError(run_dir +
                                              "/series.csv: missing column 'u2_av' "
                                              "(or u2_av_mean/u2_amplitude)");
                        continue;
                    }
                    if (!series.has_column(want))
                        throw ConfigError(run_dir + "/series.csv: missing column '" + want +
                                          "'");
                    (void)ok;
                }
            }
            std::string body = p.body;
            size_t pos;
            while ((pos = body.find("U2COL")) != std::string::npos)
                body.replace(pos, 5, "\"" + u2col + "\"");
            write_text_file(run_dir + "/plots/" + p.file, std::string(kPlotPrelude) + body);
            ++written;
        }
    }
    if (have_agg) {
        CsvTable agg = read_csv(run_dir + "/aggregate.csv");
        for (const char* col : {"t", "theta_av_mean", "theta_av_se"})
            if (!agg.has_column(col))
                throw ConfigError(run_dir + "/aggregate.csv: missing column '" +
                                  std::string(col) + "'");
        write_text_file(run_dir + "/plots/agg_theta_errorbars.py",
                        std::string(kPlotPrelude) + kAggPlot);
        ++written;
    }
    std::printf("wrote %d plot scripts to %s/plots\n", written, run_dir.c_str());
    return kExitOk;
}

}  // namespace gaslab
