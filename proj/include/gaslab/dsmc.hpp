#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gaslab/rng.hpp"

namespace gaslab {

/// Hard-sphere DSMC for the same problem as the BGK solver. kn is defined via
/// the mean free path (sqrt(2) pi d^2 n0)^{-1}; in the code units this makes
/// the dimensionless total cross section sigma_T = 1/(sqrt(2) kn) and the
/// equilibrium per-particle collision frequency (8/pi)^{1/2} rho sqrt(theta)/kn
/// (matching the BGK relaxation rate at theta = 1). See docs/notes.md.
struct DsmcConfig {
    double kn = 0.1;
    double f0 = 2.0;
    int n_cells = 50;
    int particles_per_cell = 100;
    double dt = 0.02;  // default 0.2*kn
    double t_end = 212.13203435596427;  // 300/sqrt(2)
    int n_ensemble = 8;
    double time_avg_window = 0.0;  // optional trailing average of the mean series
    uint64_t rng_seed = 20260814;
    double sample_interval = 0.5;

    void validate() const;
};

struct ParticleEnsemble {
    std::vector<double> x;            // positions in [-1/4, 1/4]
    std::vector<double> v1, v2, v3;   // velocities
    double weight = 0.0;              // dimensionless number density per particle
    int n() const { return static_cast<int>(x.size()); }
};

struct DsmcSeries {
    std::vector<double> times, theta_av, u2_av;
    long long collision_count = 0;
    double sim_time_total = 0.0;  // for rate diagnostics
};

struct RunAverager {
    std::vector<double> times;
    std::vector<std::vector<double>> theta_runs, u2_runs;  // [run][sample]
    std::vector<double> theta_mean, theta_se, u2_mean, u2_se;
    std::vector<double> theta_mean_tavg, u2_mean_tavg;  // optional trailing window
    std::vector<uint64_t> seeds;

    void aggregate(double time_avg_window);
};

/// Maxwellian initial condition (rho=1, u=0, theta=1), per-run moments
/// normalized exactly (zero mean, unit temperature).
ParticleEnsemble init_ensemble(const DsmcConfig& cfg, Rng& rng);

/// Leapfrog kick-drift-kick with specular walls (closed-form reflection fold).
void move_and_reflect(ParticleEnsemble& p, double f0, double dt);

/// Bird no-time-counter hard-sphere collisions; returns accepted collisions.
/// majorant: per-cell running (relative speed) majorant, persisted across steps.
long collide_cells(ParticleEnsemble& p, const DsmcConfig& cfg,
                   std::vector<double>& majorant, std::vector<double>& ntc_carry,
                   Rng& rng);

/// theta_av and |u2|_av from per-cell moments (unbiased variance estimator).
void cell_averages(const ParticleEnsemble& p, int n_cells, double& theta_av,
                   double& u2_av);

DsmcSeries run_single(const DsmcConfig& cfg, uint64_t seed);

/// n_ensemble independent runs (seeds rng_seed + i) on the shared sample
/// schedule; workers bounded by GASLAB_WORKERS, aggregation order fixed.
RunAverager run_ensemble(const DsmcConfig& cfg);

/// Analytic equilibrium hard-sphere per-particle collision rate in code units,
/// with the finite-sample pair-count correction (N-1)/N.
double equilibrium_collision_rate(double kn, double rho, double theta,
                                  int particles_per_cell);

/// Chi-square goodness-of-fit p-value of per-axis velocity samples against the
/// sample-fitted normal law (equal-probability bins, dof = bins - 3).
double maxwellian_chi_square_pvalue(const std::vector<double>& samples, int bins = 40);

}  // namespace gaslab
