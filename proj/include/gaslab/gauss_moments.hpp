#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace gaslab {

enum class QuadScheme { gauss_hermite, trapezoid_truncated };

/// Tensor-product quadrature for brackets <phi> = integral of phi against the
/// standard Maxwellian M = (2*pi)^{-3/2} exp(-|v|^2/2).
struct QuadratureSpec {
    int nodes_per_axis = 24;
    QuadScheme scheme = QuadScheme::gauss_hermite;
    double truncation_radius = 10.0;  // trapezoid scheme only

    void validate() const;  // throws std::invalid_argument
};

/// Radial weight r -> w(r) multiplying a tensor field, e.g. Ahat = alpha(|v|) A.
struct IsotropicWeight {
    std::string label;
    std::function<double(double)> radial_fn;
};

struct LemmaReport {
    std::string identity_name;
    double max_abs_error = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    // transport-coefficient values where the identity defines them (NaN otherwise)
    double nu_value;
    double kappa_value;
    double c_value;
    std::string worst_tuple;  // index tuple realizing max_abs_error
};

/// 1D nodes/weights integrating f -> sum w_i f(x_i) ~ integral f(x) e^{-x^2/2}/sqrt(2 pi) dx.
struct Quadrature1D {
    std::vector<double> nodes;
    std::vector<double> weights;
};
Quadrature1D gaussian_quadrature_1d(const QuadratureSpec& quad);

/// <phi> by tensor-product quadrature. Throws on a non-finite evaluation, naming the node.
double bracket(const std::function<double(const std::array<double, 3>&)>& phi,
               const QuadratureSpec& quad);

/// A(v) = v (x) v - (1/3)|v|^2 I,  B(v) = (1/2)(|v|^2 - 5) v,
/// C_jkl(v) = (1/2)(v_j v_k v_l - 3 v_j delta_kl).
void tensor_fields(const std::array<double, 3>& v, double A[3][3], double B[3],
                   double C[3][3][3]);

/// Verify the closure identities of the A, B, C fields under the Gaussian
/// bracket, with Ahat = alpha(|v|) A and Bhat = beta(|v|) B - lambda v where
/// lambda = (1/6)<beta (|v|^2-5)|v|^2>. The subtraction projects Bhat onto the
/// orthogonal complement of the collision invariants {1, v, |v|^2}; the mixed
/// identities below require <Bhat . v> = 0 and fail without it for weights that
/// are not themselves orthogonal (the transport-coefficient solutions are, so
/// for them lambda = 0 and the projection is a no-op). Note alpha*A is
/// orthogonal to the invariants for any alpha, so A needs no such projection.
///   <B_i B_j>           = (5/2) d_ij
///   <A_ij A_kl>         = d_ik d_jl + d_il d_jk - (2/3) d_ij d_kl
///   <Ahat_ij A_kl>      = nu * (same structure),  nu = (1/15)<|v|^4 alpha> = (1/10)<Ahat:A>
///   <Bhat_i B_j>        = kappa d_ij,  kappa = (1/12)<(|v|^2-5)^2 |v|^2 beta> = (1/3)<Bhat.B>
///   <Bhat_i v_j A_kl>   = (2/5) kappa * (A-structure)
///   <Bhat_i v_j Ahat_kl>= c * (A-structure),  c = (1/10)<(Bhat (x) v):Ahat>
///   <B_i C_jkl>         = (1/2)(d_ij d_kl + d_ik d_jl + d_il d_jk)
/// plus orthogonality of alpha*A to {1, v, |v|^2} and fourth-moment isotropy.
std::vector<LemmaReport> verify_appendix(const IsotropicWeight& weight_alpha,
                                         const IsotropicWeight& weight_beta,
                                         const QuadratureSpec& quad, double tol);

}  // namespace gaslab
