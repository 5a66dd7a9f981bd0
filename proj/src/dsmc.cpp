#include "gaslab/dsmc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

#include "gaslab/diagnostics.hpp"
#include "gaslab/run_io.hpp"

namespace gaslab {

namespace {
constexpr double kTwoPi = 6.2831853071795864769;
constexpr double kSqrt8OverPi = 1.5957691216057307117;
constexpr double kDomainLen = 0.5;

int cell_of(double x, int n_cells) {
    int ic = static_cast<int>((x + 0.25) * n_cells / kDomainLen);
    return std::clamp(ic, 0, n_cells - 1);
}
}  // namespace

void DsmcConfig::validate() const {
    if (kn <= 0) throw std::invalid_argument("kn: must be > 0");
    if (n_cells < 1) throw std::invalid_argument("n_cells: must be >= 1");
    if (particles_per_cell < 2)
        throw std::invalid_argument("particles_per_cell: must be >= 2");
    if (dt <= 0) throw std::invalid_argument("dt: must be > 0");
    if (t_end <= 0) throw std::invalid_argument("t_end: must be > 0");
    if (n_ensemble < 1) throw std::invalid_argument("n_ensemble: must be >= 1");
    if (sample_interval <= 0) throw std::invalid_argument("sample_interval: must be > 0");
    if (time_avg_window < 0) throw std::invalid_argument("time_avg_window: must be >= 0");
}

ParticleEnsemble init_ensemble(const DsmcConfig& cfg, Rng& rng) {
    ParticleEnsemble p;
    int n = cfg.n_cells * cfg.particles_per_cell;
    p.x.resize(n);
    p.v1.resize(n);
    p.v2.resize(n);
    p.v3.resize(n);
    p.weight = kDomainLen / n;  // rho = 1
    for (int i = 0; i < n; ++i) {
        p.x[i] = rng.uniform(-0.25, 0.25);
        p.v1[i] = rng.normal();
        p.v2[i] = rng.normal();
        p.v3[i] = rng.normal();
    }
    // exact zero mean and unit temperature under the unbiased estimator
    for (auto* v : {&p.v1, &p.v2, &p.v3}) {
        double m = 0.0;
        for (double w : *v) m += w;
        m /= n;
        for (double& w : *v) w -= m;
    }
    double s2 = 0.0;
    for (int i = 0; i < n; ++i)
        s2 += p.v1[i] * p.v1[i] + p.v2[i] * p.v2[i] + p.v3[i] * p.v3[i];
    double fac = 1.0 / std::sqrt(s2 / (3.0 * (n - 1)));
    for (int i = 0; i < n; ++i) {
        p.v1[i] *= fac;
        p.v2[i] *= fac;
        p.v3[i] *= fac;
    }
    return p;
}

void move_and_reflect(ParticleEnsemble& p, double f0, double dt) {
    int n = p.n();
    for (int i = 0; i < n; ++i) {
        p.v2[i] += 0.5 * dt * f0 * std::sin(kTwoPi * p.x[i]);
        double y = p.x[i] + p.v1[i] * dt + 0.25;  // fold the triangle wave
        y -= std::floor(y);
        if (y > 0.5) {
            y = 1.0 - y;
            p.v1[i] = -p.v1[i];
        }
        p.x[i] = y - 0.25;
        p.v2[i] += 0.5 * dt * f0 * std::sin(kTwoPi * p.x[i]);
    }
}

long collide_cells(ParticleEnsemble& p, const DsmcConfig& cfg, std::vector<double>& majorant,
                   std::vector<double>& ntc_carry, Rng& rng) {
    const int n = p.n(), nc = cfg.n_cells;
    const double vol = kDomainLen / nc;
    const double sigma_t = 1.0 / (std::sqrt(2.0) * cfg.kn);

    static thread_local std::vector<int> count, start, order;
    count.assign(nc, 0);
    start.assign(nc + 1, 0);
    order.resize(n);
    for (int i = 0; i < n; ++i) ++count[cell_of(p.x[i], nc)];
    for (int c = 0; c < nc; ++c) start[c + 1] = start[c] + count[c];
    {
        static thread_local std::vector<int> cursor;
        cursor.assign(start.begin(), start.end() - 1);
        for (int i = 0; i < n; ++i) order[cursor[cell_of(p.x[i], nc)]++] = i;
    }

    long accepted = 0;
    for (int c = 0; c < nc; ++c) {
        int nc_part = count[c];
        if (nc_part < 2) continue;
        const int* ids = order.data() + start[c];
        double cmax = majorant[c];
        double cand_f = 0.5 * nc_part * (nc_part - 1.0) * p.weight * sigma_t * cmax * cfg.dt /
                            vol +
                        ntc_carry[c];
        long cand = static_cast<long>(cand_f);
        ntc_carry[c] = cand_f - static_cast<double>(cand);
        for (long t = 0; t < cand; ++t) {
            int a = static_cast<int>(rng.uniform01() * nc_part);
            if (a >= nc_part) a = nc_part - 1;
            int b = static_cast<int>(rng.uniform01() * (nc_part - 1));
            if (b >= nc_part - 1) b = nc_part - 2;
            if (b >= a) ++b;
            int i = ids[a], j = ids[b];
            double dvx = p.v1[i] - p.v1[j];
            double dvy = p.v2[i] - p.v2[j];
            double dvz = p.v3[i] - p.v3[j];
            double cr = std::sqrt(dvx * dvx + dvy * dvy + dvz * dvz);
            if (cr > majorant[c]) majorant[c] = cr;  // adapt; never decreases
            if (rng.uniform01() * cmax >= cr) continue;
            // isotropic post-collision relative direction
            double mu = 2.0 * rng.uniform01() - 1.0;
            double phi = kTwoPi * rng.uniform01();
            double sq = std::sqrt(std::max(0.0, 1.0 - mu * mu));
            double dx = cr * mu, dy = cr * sq * std::cos(phi), dz = cr * sq * std::sin(phi);
            double cmx = 0.5 * (p.v1[i] + p.v1[j]);
            double cmy = 0.5 * (p.v2[i] + p.v2[j]);
            double cmz = 0.5 * (p.v3[i] + p.v3[j]);
            p.v1[i] = cmx + 0.5 * dx;
            p.v2[i] = cmy + 0.5 * dy;
            p.v3[i] = cmz + 0.5 * dz;
            p.v1[j] = cmx - 0.5 * dx;
            p.v2[j] = cmy - 0.5 * dy;
            p.v3[j] = cmz - 0.5 * dz;
            ++accepted;
        }
    }
    return accepted;
}

void cell_averages(const ParticleEnsemble& p, int n_cells, double& theta_av, double& u2_av) {
    static thread_local std::vector<double> s0, s1, s2, s3, q;
    s0.assign(n_cells, 0.0);
    s1.assign(n_cells, 0.0);
    s2.assign(n_cells, 0.0);
    s3.assign(n_cells, 0.0);
    q.assign(n_cells, 0.0);
    int n = p.n();
    for (int i = 0; i < n; ++i) {
        int c = cell_of(p.x[i], n_cells);
        s0[c] += 1.0;
        s1[c] += p.v1[i];
        s2[c] += p.v2[i];
        s3[c] += p.v3[i];
        q[c] += p.v1[i] * p.v1[i] + p.v2[i] * p.v2[i] + p.v3[i] * p.v3[i];
    }
    double th = 0.0, u2 = 0.0;
    int used = 0;
    for (int c = 0; c < n_cells; ++c) {
        if (s0[c] < 2.0) continue;
        double m1 = s1[c] / s0[c], m2 = s2[c] / s0[c], m3 = s3[c] / s0[c];
        double dev = q[c] - s0[c] * (m1 * m1 + m2 * m2 + m3 * m3);
        th += dev / (3.0 * (s0[c] - 1.0));
        u2 += std::fabs(m2);
        ++used;
    }
    theta_av = used > 0 ? th / used : 0.0;
    u2_av = used > 0 ? u2 / used : 0.0;
}

DsmcSeries run_single(const DsmcConfig& cfg, uint64_t seed) {
    cfg.validate();
    Rng rng(seed);
    ParticleEnsemble p = init_ensemble(cfg, rng);
    std::vector<double> majorant(cfg.n_cells, 6.0);
    std::vector<double> carry(cfg.n_cells, 0.0);
    DsmcSeries out;
    double th, u2;
    cell_averages(p, cfg.n_cells, th, u2);
    out.times.push_back(0.0);
    out.theta_av.push_back(th);
    out.u2_av.push_back(u2);
    double t = 0.0, next = cfg.sample_interval;
    const double eps = 1e-9;
    while (t < cfg.t_end - eps) {
        double target = std::min(next, cfg.t_end);
        double dt = std::min(cfg.dt, target - t);
        DsmcConfig step_cfg = cfg;
        step_cfg.dt = dt;
        move_and_reflect(p, cfg.f0, dt);
        out.collision_count += collide_cells(p, step_cfg, majorant, carry, rng);
        t += dt;
        if (std::fabs(t - target) < eps) t = target;
        if (t >= next - eps) {
            cell_averages(p, cfg.n_cells, th, u2);
            out.times.push_back(t);
            out.theta_av.push_back(th);
            out.u2_av.push_back(u2);
            next += cfg.sample_interval;
        }
    }
    out.sim_time_total = t;
    return out;
}

void RunAverager::aggregate(double time_avg_window) {
    size_t ns = times.size(), nr = theta_runs.size();
    theta_mean.assign(ns, 0.0);
    u2_mean.assign(ns, 0.0);
    theta_se.assign(ns, 0.0);
    u2_se.assign(ns, 0.0);
    for (size_t s = 0; s < ns; ++s) {
        for (size_t r = 0; r < nr; ++r) {
            theta_mean[s] += theta_runs[r][s];
            u2_mean[s] += u2_runs[r][s];
        }
        theta_mean[s] /= nr;
        u2_mean[s] /= nr;
        if (nr > 1) {
            double vt = 0.0, vu = 0.0;
            for (size_t r = 0; r < nr; ++r) {
                vt += (theta_runs[r][s] - theta_mean[s]) * (theta_runs[r][s] - theta_mean[s]);
                vu += (u2_runs[r][s] - u2_mean[s]) * (u2_runs[r][s] - u2_mean[s]);
            }
            theta_se[s] = std::sqrt(vt / (nr - 1) / nr);
            u2_se[s] = std::sqrt(vu / (nr - 1) / nr);
        }
    }
    if (time_avg_window > 0) {
        theta_mean_tavg = trailing_average(times, theta_mean, time_avg_window);
        u2_mean_tavg = trailing_average(times, u2_mean, time_avg_window);
    } else {
        theta_mean_tavg = theta_mean;
        u2_mean_tavg = u2_mean;
    }
}

RunAverager run_ensemble(const DsmcConfig& cfg) {
    cfg.validate();
    RunAverager agg;
    agg.theta_runs.resize(cfg.n_ensemble);
    agg.u2_runs.resize(cfg.n_ensemble);
    std::vector<std::vector<double>> run_times(cfg.n_ensemble);
    for (int i = 0; i < cfg.n_ensemble; ++i) agg.seeds.push_back(cfg.rng_seed + i);

    int workers = std::min(env_worker_count(), cfg.n_ensemble);
    std::atomic<int> cursor{0};
    auto body = [&]() {
        for (;;) {
            int i = cursor.fetch_add(1);
            if (i >= cfg.n_ensemble) return;
            DsmcSeries s = run_single(cfg, agg.seeds[i]);
            run_times[i] = std::move(s.times);
            agg.theta_runs[i] = std::move(s.theta_av);
            agg.u2_runs[i] = std::move(s.u2_av);
        }
    };
    if (workers <= 1) {
        body();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(body);
        for (auto& th : pool) th.join();
    }
    agg.times = run_times[0];
    for (int i = 1; i < cfg.n_ensemble; ++i)
        if (run_times[i] != agg.times)
            throw std::logic_error("ensemble runs diverged in sample schedule");
    agg.aggregate(cfg.time_avg_window);
    return agg;
}

double equilibrium_collision_rate(double kn, double rho, double theta,
                                  int particles_per_cell) {
    double nu = kSqrt8OverPi * rho * std::sqrt(theta) / kn;
    return nu * (particles_per_cell - 1.0) / particles_per_cell;
}

double maxwellian_chi_square_pvalue(const std::vector<double>& samples, int bins) {
    const int n = static_cast<int>(samples.size());
    if (n < 10 * bins) throw std::invalid_argument("chi-square: too few samples");
    double m = 0.0;
    for (double v : samples) m += v;
    m /= n;
    double s2 = 0.0;
    for (double v : samples) s2 += (v - m) * (v - m);
    double sd = std::sqrt(s2 / (n - 1));

    boost::math::normal_distribution<double> law(m, sd);
    std::vector<long> obs(bins, 0);
    std::vector<double> edges(bins - 1);
    for (int b = 1; b < bins; ++b)
        edges[b - 1] = boost::math::quantile(law, static_cast<double>(b) / bins);
    for (double v : samples) {
        int b = static_cast<int>(std::lower_bound(edges.begin(), edges.end(), v) -
                                 edges.begin());
        ++obs[b];
    }
    double expect = static_cast<double>(n) / bins;
    double chi2 = 0.0;
    for (long o : obs) chi2 += (o - expect) * (o - expect) / expect;
    boost::math::chi_squared_distribution<double> chi(bins - 1 - 2);
    return boost::math::cdf(boost::math::complement(chi, chi2));
}

}  // namespace gaslab
