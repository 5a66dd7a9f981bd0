#include "gaslab/reduced_dist.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gaslab {

namespace {
constexpr double kTwoPi = 6.2831853071795864769;
constexpr double kLn2PiE = 2.8378770664093454836;  // ln(2 pi e)
}  // namespace

void MaxwellianParams::validate() const {
    if (rho <= 0) throw std::invalid_argument("maxwellian: rho must be > 0");
    if (theta <= 0) throw std::invalid_argument("maxwellian: theta must be > 0");
    if (u[2] != 0.0)
        throw std::invalid_argument("maxwellian: u3 must be 0 (reduced pair closes with H = theta*G)");
}

ReducedDistributionPair maxwellian_reduced(const MaxwellianParams& p,
                                           const VelocityGrid2D& vgrid, int n_x) {
    p.validate();
    vgrid.validate();
    ReducedDistributionPair f(n_x, vgrid.n_v1, vgrid.n_v2);
    double pref = p.rho / (kTwoPi * p.theta);
    for (int i = 0; i < vgrid.n_v1; ++i) {
        double d1 = vgrid.node1(i) - p.u[0];
        double e1 = std::exp(-0.5 * d1 * d1 / p.theta);
        for (int j = 0; j < vgrid.n_v2; ++j) {
            double d2 = vgrid.node2(j) - p.u[1];
            double g = pref * e1 * std::exp(-0.5 * d2 * d2 / p.theta);
            double h = p.theta * g;
            size_t base = f.idx(i, j, 0);
            for (int x = 0; x < n_x; ++x) {
                f.G[base + x] = g;
                f.H[base + x] = h;
            }
        }
    }
    return f;
}

namespace {

// Discrete 1D Gaussian sums over the grid nodes for exp(-(v-a)^2/(2b)).
struct Sums1D {
    double s0 = 0, s1 = 0, s2 = 0;
};
template <typename NodeFn>
Sums1D gaussian_sums(NodeFn node, int n, double a, double b) {
    Sums1D s;
    double inv2b = 0.5 / b;
    for (int k = 0; k < n; ++k) {
        double v = node(k);
        double d = v - a;
        double g = std::exp(-d * d * inv2b);
        s.s0 += g;
        s.s1 += v * g;
        s.s2 += v * v * g;
    }
    return s;
}

}  // namespace

void moment_matched_maxwellian_cell(double rho, double u1, double u2, double theta,
                                    const VelocityGrid2D& vgrid, std::vector<double>& g1,
                                    std::vector<double>& g2, double& c, double& b) {
    if (rho <= 0 || theta <= 0)
        throw std::runtime_error("moment_matched_maxwellian: degenerate state (rho or theta <= 0)");
    double a1 = u1, a2 = u2;
    b = theta;
    auto n1 = [&](int k) { return vgrid.node1(k); };
    auto n2 = [&](int k) { return vgrid.node2(k); };
    Sums1D s1{}, s2{};
    for (int it = 0; it < 4; ++it) {
        s1 = gaussian_sums(n1, vgrid.n_v1, a1, b);
        s2 = gaussian_sums(n2, vgrid.n_v2, a2, b);
        double m1 = s1.s1 / s1.s0, m2 = s2.s1 / s2.s0;
        double t1 = s1.s2 / s1.s0 - m1 * m1;
        double t2 = s2.s2 / s2.s0 - m2 * m2;
        a1 += u1 - m1;
        a2 += u2 - m2;
        // target: t1 + t2 + b = 3*theta (H = b*G carries the v3 energy)
        double bn = b * (3.0 * theta) / (t1 + t2 + b);
        if (!(bn > 0) || !std::isfinite(bn))
            throw std::runtime_error("moment_matched_maxwellian: parameter iteration diverged");
        b = bn;
    }
    g1.resize(vgrid.n_v1);
    g2.resize(vgrid.n_v2);
    double inv2b = 0.5 / b;
    for (int k = 0; k < vgrid.n_v1; ++k) {
        double d = vgrid.node1(k) - a1;
        g1[k] = std::exp(-d * d * inv2b);
    }
    for (int k = 0; k < vgrid.n_v2; ++k) {
        double d = vgrid.node2(k) - a2;
        g2[k] = std::exp(-d * d * inv2b);
    }
    // exact discrete mass
    double sum1 = 0, sum2 = 0;
    for (double v : g1) sum1 += v;
    for (double v : g2) sum2 += v;
    c = rho / (sum1 * sum2 * vgrid.cell_area());
}

ReducedDistributionPair moment_matched_maxwellian(const MaxwellianParams& p,
                                                  const VelocityGrid2D& vgrid, int n_x) {
    p.validate();
    vgrid.validate();
    std::vector<double> g1, g2;
    double c, b;
    moment_matched_maxwellian_cell(p.rho, p.u[0], p.u[1], p.theta, vgrid, g1, g2, c, b);
    ReducedDistributionPair f(n_x, vgrid.n_v1, vgrid.n_v2);
    for (int i = 0; i < vgrid.n_v1; ++i)
        for (int j = 0; j < vgrid.n_v2; ++j) {
            double g = c * g1[i] * g2[j];
            size_t base = f.idx(i, j, 0);
            for (int x = 0; x < n_x; ++x) {
                f.G[base + x] = g;
                f.H[base + x] = b * g;
            }
        }
    return f;
}

MacroFields moments(const ReducedDistributionPair& f, const VelocityGrid2D& vgrid) {
    int nx = f.n_x;
    MacroFields m;
    m.rho.assign(nx, 0.0);
    m.u1.assign(nx, 0.0);
    m.u2.assign(nx, 0.0);
    m.theta.assign(nx, 0.0);
    std::vector<double> m0(nx, 0.0), m1(nx, 0.0), m2(nx, 0.0), me(nx, 0.0), mh(nx, 0.0);
    for (int i = 0; i < f.n_v1; ++i) {
        double v1 = vgrid.node1(i);
        for (int j = 0; j < f.n_v2; ++j) {
            double v2 = vgrid.node2(j);
            double vv = v1 * v1 + v2 * v2;
            const double* g = &f.G[f.idx(i, j, 0)];
            const double* h = &f.H[f.idx(i, j, 0)];
            for (int x = 0; x < nx; ++x) {
                m0[x] += g[x];
                m1[x] += v1 * g[x];
                m2[x] += v2 * g[x];
                me[x] += vv * g[x];
                mh[x] += h[x];
            }
        }
    }
    double area = vgrid.cell_area();
    for (int x = 0; x < nx; ++x) {
        double rho = m0[x] * area;
        if (!(rho > 0)) {
            std::ostringstream os;
            os << "moments: nonpositive density in cell " << x;
            throw std::runtime_error(os.str());
        }
        double u1 = m1[x] / m0[x];
        double u2 = m2[x] / m0[x];
        double th = ((me[x] + mh[x]) / m0[x] - u1 * u1 - u2 * u2) / 3.0;
        m.rho[x] = rho;
        m.u1[x] = u1;
        m.u2[x] = u2;
        m.theta[x] = th;
    }
    return m;
}

double entropy_cell(const ReducedDistributionPair& f, const VelocityGrid2D& vgrid, int ix) {
    // The integrand extends continuously by 0 as G -> 0+ for any H, and the
    // far tail underflows G and H at slightly different nodes, so one-sided
    // zeros there are expected and skipped. Real negativity is corruption.
    constexpr double kNegFloor = -1e-12;
    double s = 0.0;
    for (int i = 0; i < f.n_v1; ++i)
        for (int j = 0; j < f.n_v2; ++j) {
            double g = f.g(i, j, ix);
            double h = f.h(i, j, ix);
            if (g < kNegFloor || h < kNegFloor) {
                std::ostringstream os;
                os << "entropy: negative G or H at node (" << i << "," << j << "," << ix << ")";
                throw std::runtime_error(os.str());
            }
            if (g <= 1e-300 || h <= 1e-300) continue;
            // G ln G - (1/2) G ln(2 pi e H / G) = (3/2) G ln G - (1/2) G ln H - (1/2) ln(2 pi e) G
            s += 1.5 * g * std::log(g) - 0.5 * g * std::log(h) - 0.5 * kLn2PiE * g;
        }
    return s * vgrid.cell_area();
}

double entropy(const ReducedDistributionPair& f, const VelocityGrid2D& vgrid,
               const SpatialGrid1D& grid) {
    double s = 0.0;
    for (int x = 0; x < f.n_x; ++x) s += entropy_cell(f, vgrid, x);
    return s * grid.dx();
}

double total_mass(const ReducedDistributionPair& f, const VelocityGrid2D& vgrid,
                  const SpatialGrid1D& grid) {
    double s = 0.0;
    for (double g : f.G) s += g;
    return s * vgrid.cell_area() * grid.dx();
}

}  // namespace gaslab
