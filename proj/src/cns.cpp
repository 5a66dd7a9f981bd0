#include "gaslab/cns.hpp"

#include <cmath>
#include <stdexcept>

namespace gaslab {

namespace {
constexpr double kTwoPi = 6.2831853071795864769;

/// Solve (I - lam * D) y = rhs with D the zero-flux face-coefficient Laplacian
/// (face_mu holds n+1 face coefficients, ends zero). Thomas algorithm.
void implicit_diffuse(std::vector<double>& y, const std::vector<double>& rhs,
                      const std::vector<double>& face_mu, double lam, double dx) {
    int n = static_cast<int>(y.size());
    static thread_local std::vector<double> a, b, c, w;
    a.resize(n);
    b.resize(n);
    c.resize(n);
    w.resize(n);
    double r = lam / (dx * dx);
    for (int i = 0; i < n; ++i) {
        double ml = face_mu[i], mr = face_mu[i + 1];
        a[i] = -r * ml;
        c[i] = -r * mr;
        b[i] = 1.0 + r * (ml + mr);
    }
    w[0] = c[0] / b[0];
    y[0] = rhs[0] / b[0];
    for (int i = 1; i < n; ++i) {
        double den = b[i] - a[i] * w[i - 1];
        w[i] = c[i] / den;
        y[i] = (rhs[i] - a[i] * y[i - 1]) / den;
    }
    for (int i = n - 2; i >= 0; --i) y[i] -= w[i] * y[i + 1];
}

}  // namespace

void CnsConfig::validate() const {
    if (delta < 0) throw std::invalid_argument("delta: must be >= 0");
    if (c_mu <= 0 || c_kappa <= 0)
        throw std::invalid_argument("transport coefficients must be > 0");
    if (rho0 <= 0) throw std::invalid_argument("rho0: must be > 0");
    if (n_cells < 4) throw std::invalid_argument("n_cells: must be >= 4");
    if (dt <= 0) throw std::invalid_argument("dt: must be > 0");
    if (t_end <= 0) throw std::invalid_argument("t_end: must be > 0");
    if (sample_interval < 0) throw std::invalid_argument("sample_interval: must be >= 0");
}

CnsState cns_init(const CnsConfig& cfg) {
    cfg.validate();
    CnsState s;
    s.u2.assign(cfg.n_cells, 0.0);
    s.theta.assign(cfg.n_cells, 1.0);
    s.rho = cfg.rho0;
    return s;
}

double cns_theta_av(const CnsState& s) {
    double t = 0.0;
    for (double v : s.theta) t += v;
    return t / s.theta.size();
}

void cns_step(CnsState& s, const CnsConfig& cfg) {
    const int n = static_cast<int>(s.u2.size());
    const double dx = 0.5 / n;
    static thread_local std::vector<double> mu, face, rhs, heat;
    mu.resize(n);
    face.resize(n + 1);
    rhs.resize(n);
    heat.resize(n);

    for (int i = 0; i < n; ++i) mu[i] = cfg.c_mu * std::pow(s.theta[i], cfg.delta);
    face[0] = face[n] = 0.0;
    for (int i = 1; i < n; ++i) face[i] = 0.5 * (mu[i - 1] + mu[i]);

    for (int i = 0; i < n; ++i) {
        double x = -0.25 + (i + 0.5) * dx;
        rhs[i] = s.u2[i] + cfg.dt * cfg.g0 * std::sin(kTwoPi * x);
    }
    implicit_diffuse(s.u2, rhs, face, cfg.dt / s.rho, dx);

    // face-gradient dissipation, split evenly onto the adjacent cells so the
    // total heating equals the kinetic energy removed by the viscous term
    std::fill(heat.begin(), heat.end(), 0.0);
    for (int i = 1; i < n; ++i) {
        double g = (s.u2[i] - s.u2[i - 1]) / dx;
        double q = face[i] * g * g;
        heat[i - 1] += 0.5 * q;
        heat[i] += 0.5 * q;
    }
    double hfac = cfg.dt * 2.0 / (3.0 * s.rho);
    for (int i = 0; i < n; ++i) rhs[i] = s.theta[i] + hfac * heat[i];

    for (int i = 0; i < n; ++i) mu[i] = cfg.c_kappa * std::pow(s.theta[i], cfg.delta);
    face[0] = face[n] = 0.0;
    for (int i = 1; i < n; ++i) face[i] = 0.5 * (mu[i - 1] + mu[i]);
    implicit_diffuse(s.theta, rhs, face, cfg.dt * 2.0 / (3.0 * s.rho), dx);

    s.time += cfg.dt;
}

CnsSeries cns_run(const CnsConfig& cfg) {
    CnsState s = cns_init(cfg);
    double interval = cfg.sample_interval > 0 ? cfg.sample_interval : cfg.t_end / 2000.0;
    CnsSeries out;
    auto record = [&](double dudt) {
        double amp = 0.0;
        for (double u : s.u2) amp = std::max(amp, std::fabs(u));
        out.times.push_back(s.time);
        out.theta_av.push_back(cns_theta_av(s));
        out.u2_amplitude.push_back(amp);
        out.dudt_norm.push_back(dudt);
    };
    record(0.0);
    double next = interval;
    static thread_local std::vector<double> u_prev;
    const double eps = 1e-9;
    while (s.time < cfg.t_end - eps) {
        u_prev = s.u2;
        cns_step(s, cfg);
        if (s.time >= next - eps) {
            double d2 = 0.0;
            for (size_t i = 0; i < u_prev.size(); ++i) {
                double d = (s.u2[i] - u_prev[i]) / cfg.dt;
                d2 += d * d;
            }
            record(std::sqrt(d2 / u_prev.size()));
            next += interval;
        }
    }
    return out;
}

double closed_form_theta_av(double t, const CnsConfig& cfg) {
    double c1 = (1.0 + cfg.delta) * cfg.g0 * cfg.g0 * cfg.rho0 /
                (12.0 * M_PI * M_PI * cfg.c_mu);
    return std::pow(c1 * t + 1.0, 1.0 / (1.0 + cfg.delta));
}

void quasi_steady_profile(double theta_av, const CnsConfig& cfg, int n_cells,
                          std::vector<double>& u2, std::vector<double>& du2_dx) {
    double mu = cfg.c_mu * std::pow(theta_av, cfg.delta);
    double dx = 0.5 / n_cells;
    u2.resize(n_cells);
    du2_dx.resize(n_cells);
    for (int i = 0; i < n_cells; ++i) {
        double x = -0.25 + (i + 0.5) * dx;
        u2[i] = cfg.g0 * cfg.rho0 / (4.0 * M_PI * M_PI * mu) * std::sin(kTwoPi * x);
        du2_dx[i] = cfg.g0 * cfg.rho0 / (kTwoPi * mu) * std::cos(kTwoPi * x);
    }
}

}  // namespace gaslab
