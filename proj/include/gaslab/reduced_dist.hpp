#pragma once

#include <array>
#include <vector>

#include "gaslab/grids.hpp"

namespace gaslab {

/// Chu-reduced kinetic state: G = integral of F dv3, H = integral of v3^2 F dv3,
/// stored x-fastest: index (iv1*n_v2 + iv2)*n_x + ix.
struct ReducedDistributionPair {
    int n_x = 0, n_v1 = 0, n_v2 = 0;
    std::vector<double> G, H;

    ReducedDistributionPair() = default;
    ReducedDistributionPair(int nx, int nv1, int nv2)
        : n_x(nx), n_v1(nv1), n_v2(nv2),
          G(static_cast<size_t>(nx) * nv1 * nv2, 0.0),
          H(static_cast<size_t>(nx) * nv1 * nv2, 0.0) {}

    size_t idx(int iv1, int iv2, int ix) const {
        return (static_cast<size_t>(iv1) * n_v2 + iv2) * n_x + ix;
    }
    double& g(int iv1, int iv2, int ix) { return G[idx(iv1, iv2, ix)]; }
    double& h(int iv1, int iv2, int ix) { return H[idx(iv1, iv2, ix)]; }
    double g(int iv1, int iv2, int ix) const { return G[idx(iv1, iv2, ix)]; }
    double h(int iv1, int iv2, int ix) const { return H[idx(iv1, iv2, ix)]; }
};

struct MacroFields {
    std::vector<double> rho, u1, u2, theta;  // u3 == 0 identically
    int n_cells() const { return static_cast<int>(rho.size()); }
};

struct MaxwellianParams {
    double rho = 1.0;
    std::array<double, 3> u{0.0, 0.0, 0.0};
    double theta = 1.0;

    void validate() const;  // rho, theta > 0; u[2] == 0 (H = theta*G closure)
};

/// Analytic sampling of the reduced Maxwellian:
/// G = rho/(2 pi theta) exp(-((v1-u1)^2+(v2-u2)^2)/(2 theta)), H = theta*G,
/// identical in every one of the n_x cells.
ReducedDistributionPair maxwellian_reduced(const MaxwellianParams& p,
                                           const VelocityGrid2D& vgrid, int n_x = 1);

/// Discrete Gaussian with parameters tuned so the *grid sums* reproduce
/// (rho, u1, u2, theta) to ~1e-15 (H = b*G with shared per-axis parameter b).
/// This is the exact discrete minimizer of the entropy surrogate at fixed
/// discrete moments; the BGK relaxation targets it.
void moment_matched_maxwellian_cell(double rho, double u1, double u2, double theta,
                                    const VelocityGrid2D& vgrid,
                                    std::vector<double>& g1,   // size n_v1
                                    std::vector<double>& g2,   // size n_v2
                                    double& c, double& b);
ReducedDistributionPair moment_matched_maxwellian(const MaxwellianParams& p,
                                                  const VelocityGrid2D& vgrid, int n_x = 1);

/// Per-cell moments: rho = iint G, rho u1 = iint v1 G, rho u2 = iint v2 G,
/// 3 rho theta = iint (v1^2+v2^2) G + iint H - rho (u1^2+u2^2).
MacroFields moments(const ReducedDistributionPair& f, const VelocityGrid2D& vgrid);

/// Reduced H-functional surrogate for iint F ln F dv dx:
///   S = sum [ G ln G - (1/2) G ln(2 pi e H / G) ] dv1 dv2 dx,
/// exact whenever F is Maxwellian in v3 (preserved by the BGK dynamics from
/// Maxwellian data). Non-increasing under the collision substep.
double entropy(const ReducedDistributionPair& f, const VelocityGrid2D& vgrid,
               const SpatialGrid1D& grid);

/// Entropy of a single cell column (dv1*dv2 measure, no dx factor).
double entropy_cell(const ReducedDistributionPair& f, const VelocityGrid2D& vgrid, int ix);

double total_mass(const ReducedDistributionPair& f, const VelocityGrid2D& vgrid,
                  const SpatialGrid1D& grid);

}  // namespace gaslab
