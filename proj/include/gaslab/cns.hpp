#pragma once

#include <vector>

namespace gaslab {

/// Unidirectional compressible Navier-Stokes reduction on [-1/4, 1/4]:
///   du2/dt    = (1/rho) d/dx (mu(theta) du2/dx) + g0 sin(2 pi x)
///   dtheta/dt = (2/(3 rho)) d/dx (kappa(theta) dtheta/dx) + (2/3)(mu/rho)(du2/dx)^2
/// with Neumann ends, mu = c_mu theta^delta, kappa = c_kappa theta^delta,
/// uniform rho. Defaults are the Chapman-Enskog coefficients of the BGK model
/// with collision frequency (8/pi)^{1/2} rho (kn = 1 units); see docs/notes.md.
struct CnsConfig {
    double g0 = 1.0;
    double delta = 1.0;
    double c_mu = 0.6266570686577501;        // sqrt(pi/8)
    double c_kappa = 1.5666426716443752;     // (5/2) sqrt(pi/8)
    double rho0 = 1.0;
    int n_cells = 200;
    double dt = 0.01;
    double t_end = 1000.0;
    double sample_interval = 0.0;  // 0 = auto (~400 log-spaced-ish uniform samples)

    void validate() const;
};

struct CnsState {
    std::vector<double> u2, theta;
    double rho = 1.0;
    double time = 0.0;
};

struct CnsSeries {
    std::vector<double> times, theta_av, u2_amplitude, dudt_norm;
};

/// One semi-implicit step: diffusion backward Euler with lagged mu(theta^n),
/// kappa(theta^n); force and viscous heating explicit.
void cns_step(CnsState& s, const CnsConfig& cfg);

CnsState cns_init(const CnsConfig& cfg);
CnsSeries cns_run(const CnsConfig& cfg);

/// (C1 t + 1)^{1/(1+delta)} with C1 = (1+delta) g0^2 rho /(12 pi^2 c_mu).
double closed_form_theta_av(double t, const CnsConfig& cfg);

/// Quasi-steady balance profiles at the given average temperature:
/// du2/dx = (g0 rho /(2 pi mu)) cos(2 pi x), u2 = (g0 rho /(4 pi^2 mu)) sin(2 pi x).
void quasi_steady_profile(double theta_av, const CnsConfig& cfg, int n_cells,
                          std::vector<double>& u2, std::vector<double>& du2_dx);

double cns_theta_av(const CnsState& s);

}  // namespace gaslab
