#pragma once

#include <stdexcept>

namespace gaslab {

/// Uniform cell-centered grid on [-1/4, 1/4] (the force's half period).
struct SpatialGrid1D {
    int n_cells = 100;
    double x_min = -0.25;
    double x_max = 0.25;

    double dx() const { return (x_max - x_min) / n_cells; }
    double center(int i) const { return x_min + (i + 0.5) * dx(); }

    void validate() const {
        if (n_cells < 2) throw std::invalid_argument("n_cells: must be >= 2");
        if (x_max - x_min != 0.5)
            throw std::invalid_argument("spatial grid: x_max - x_min must equal 1/2");
    }
};

/// Uniform midpoint velocity grid on [-v_max, v_max]^2 * scale, no node at 0,
/// exactly symmetric: node(n-1-k) == -node(k) bit-for-bit.
struct VelocityGrid2D {
    int n_v1 = 64;
    int n_v2 = 64;
    double v_max = 6.0;   // half-extent in scaled units
    double scale = 1.0;   // current rescaling factor (grows with sqrt(theta_av))

    double dv1() const { return 2.0 * v_max * scale / n_v1; }
    double dv2() const { return 2.0 * v_max * scale / n_v2; }
    double node1(int k) const { return v_max * scale * (2 * k + 1 - n_v1) / n_v1; }
    double node2(int k) const { return v_max * scale * (2 * k + 1 - n_v2) / n_v2; }
    int mirror1(int k) const { return n_v1 - 1 - k; }
    double cell_area() const { return dv1() * dv2(); }

    void validate() const {
        if (n_v1 < 4 || n_v2 < 4) throw std::invalid_argument("velocity grid: need >= 4 nodes per axis");
        if (n_v1 % 2 || n_v2 % 2)
            throw std::invalid_argument("velocity grid: node counts must be even (symmetric about 0)");
        if (v_max <= 0 || scale <= 0) throw std::invalid_argument("velocity grid: v_max and scale must be > 0");
    }
};

}  // namespace gaslab
