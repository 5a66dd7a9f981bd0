#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace gaslab {

/// Mean-zero truncated Fourier vector field on the unit 3-torus:
/// u(x) = sum_{|k|_inf <= N, k != 0} c_k e^{2 pi i k.x}, c_{-k} = conj(c_k).
struct FourierVectorField {
    int N = 0;
    std::vector<std::complex<double>> c;  // dense (2N+1)^3 x 3, k=0 kept zero

    FourierVectorField() = default;
    explicit FourierVectorField(int n)
        : N(n), c(static_cast<size_t>(2 * n + 1) * (2 * n + 1) * (2 * n + 1) * 3) {}

    int side() const { return 2 * N + 1; }
    size_t idx(int kx, int ky, int kz, int comp) const {
        return ((static_cast<size_t>(kx + N) * side() + (ky + N)) * side() + (kz + N)) * 3 + comp;
    }
    std::complex<double>& at(int kx, int ky, int kz, int comp) { return c[idx(kx, ky, kz, comp)]; }
    const std::complex<double>& at(int kx, int ky, int kz, int comp) const {
        return c[idx(kx, ky, kz, comp)];
    }

    void symmetrize();        // enforce Hermitian symmetry and zero mean
    double l2_norm() const;   // sqrt(sum |c|^2) = L2 norm of the field
    double max_divergence() const;  // max_k |k . c_k| / max(|c|)
};

struct SteadyNsConfig {
    double nu = 1.0;
    int N = 16;
    double damping = 1.0;      // Picard damping lambda in (0,1]
    int max_iter = 200;
    double residual_tol = 1e-10;
    double sobolev_c = 1.0;    // heuristic constant in the smallness certificate
    FourierVectorField force;  // must be divergence-free, mean-zero

    void validate() const;
};

struct SteadyNsResult {
    FourierVectorField u;
    double residual = 0.0;
    int iterations = 0;
    bool converged = false;
    bool smallness_held = false;
    double force_hminus1 = 0.0;   // ||(-Delta)^{-1/2} f||
    double grad_norm = 0.0;       // ||grad u||
    double energy_margin = 0.0;   // nu^{-1}||(-Delta)^{-1/2}f|| - ||grad u||
    double obstruction = 0.0;     // integral |grad u + (grad u)^T|^2
    std::vector<double> residual_history;
    std::vector<double> update_ratios;  // successive update norm ratios
};

/// Mode-wise Leray projection c_k -> c_k - k (k.c_k)/|k|^2.
FourierVectorField leray_project(const FourierVectorField& v);

/// T(v) = (-Delta)^{-1} Pi div(v (x) v), pseudospectral on a zero-padded grid
/// (3N+1 points per axis), so the quadratic products carry no aliasing at all.
FourierVectorField bilinear_T(const FourierVectorField& v);

/// Damped Picard iteration u <- (1-lambda) u + lambda [ (-nu Delta)^{-1} Pi f - nu^{-1} T(u) ].
SteadyNsResult solve_steady(const SteadyNsConfig& cfg);

/// Verification device for the steady temperature equation
/// (5/2) div(u theta) = kappa Delta theta (mean-zero theta): fixed-point sweeps
/// from a seeded random state; returns final ||theta||_L2 (0 expected).
double nsf_theta(const FourierVectorField& u, double kappa = 1.0, int sweeps = 60,
                 uint64_t seed = 1);

/// integral over T^3 of |grad u + (grad u)^T|^2, computed spectrally.
double viscous_heating_obstruction(const FourierVectorField& u);

double grad_l2_norm(const FourierVectorField& u);
double hminus1_norm(const FourierVectorField& f);  // ||(-Delta)^{-1/2} f||

/// Shear force (0, 0, a sin(2 pi x1)) as a Fourier field.
FourierVectorField shear_force(int N, double amplitude = 1.0);

/// Random divergence-free mean-zero field with ||(-Delta)^{-1/2} . || = target.
FourierVectorField random_divfree_force(int N, int kmax, double target_hminus1,
                                        uint64_t seed);

struct NonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace gaslab
