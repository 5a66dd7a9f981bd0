#include "gaslab/gauss_moments.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace gaslab {

namespace {
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr double kSqrt2Pi = 2.5066282746310005024;

double delta(int i, int j) { return i == j ? 1.0 : 0.0; }

// d_ik d_jl + d_il d_jk - (2/3) d_ij d_kl
double a_structure(int i, int j, int k, int l) {
    return delta(i, k) * delta(j, l) + delta(i, l) * delta(j, k) -
           (2.0 / 3.0) * delta(i, j) * delta(k, l);
}

// d_ij d_kl + d_ik d_jl + d_il d_jk (fully symmetric fourth-moment structure)
double sym_structure(int i, int j, int k, int l) {
    return delta(i, j) * delta(k, l) + delta(i, k) * delta(j, l) + delta(i, l) * delta(j, k);
}

std::string tuple_name(std::initializer_list<int> ix) {
    std::ostringstream os;
    os << "(";
    bool first = true;
    for (int i : ix) {
        if (!first) os << ",";
        os << i;
        first = false;
    }
    os << ")";
    return os.str();
}
}  // namespace

void QuadratureSpec::validate() const {
    if (nodes_per_axis < 4) throw std::invalid_argument("nodes_per_axis: must be >= 4");
    if (scheme == QuadScheme::trapezoid_truncated && truncation_radius <= 0)
        throw std::invalid_argument("truncation_radius: must be > 0 for the trapezoid scheme");
}

Quadrature1D gaussian_quadrature_1d(const QuadratureSpec& quad) {
    quad.validate();
    Quadrature1D q;
    int n = quad.nodes_per_axis;
    q.nodes.resize(n);
    q.weights.resize(n);
    if (quad.scheme == QuadScheme::gauss_hermite) {
        // Golub-Welsch for the physicists' weight e^{-x^2}; Jacobi matrix has
        // off-diagonal sqrt(i/2). Rescale x -> sqrt(2) x for weight e^{-v^2/2}.
        Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
        for (int i = 1; i < n; ++i) {
            double b = std::sqrt(i / 2.0);
            J(i, i - 1) = b;
            J(i - 1, i) = b;
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
        for (int i = 0; i < n; ++i) {
            q.nodes[i] = std::sqrt(2.0) * es.eigenvalues()(i);
            // GH weight = sqrt(pi) v0^2; normalizing by 1/sqrt(pi) gives unit mass.
            double v0 = es.eigenvectors()(0, i);
            q.weights[i] = v0 * v0;
        }
    } else {
        // Midpoint-offset trapezoid on [-R, R]: no node at 0, exactly symmetric,
        // spectrally accurate for smooth decaying integrands.
        double r = quad.truncation_radius;
        double dv = 2.0 * r / n;
        for (int i = 0; i < n; ++i) {
            double x = r * (2 * i + 1 - n) / n;
            q.nodes[i] = x;
            q.weights[i] = dv * std::exp(-0.5 * x * x) / kSqrt2Pi;
        }
    }
    return q;
}

double bracket(const std::function<double(const std::array<double, 3>&)>& phi,
               const QuadratureSpec& quad) {
    Quadrature1D q = gaussian_quadrature_1d(quad);
    int n = static_cast<int>(q.nodes.size());
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double wij = q.weights[i] * q.weights[j];
            double part = 0.0;
            for (int k = 0; k < n; ++k) {
                std::array<double, 3> v{q.nodes[i], q.nodes[j], q.nodes[k]};
                double val = phi(v);
                if (!std::isfinite(val)) {
                    std::ostringstream os;
                    os << "bracket: non-finite evaluation at node (" << v[0] << ", " << v[1]
                       << ", " << v[2] << ")";
                    throw std::domain_error(os.str());
                }
                part += q.weights[k] * val;
            }
            acc += wij * part;
        }
    return acc;
}

void tensor_fields(const std::array<double, 3>& v, double A[3][3], double B[3],
                   double C[3][3][3]) {
    double v2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) A[i][j] = v[i] * v[j] - (i == j ? v2 / 3.0 : 0.0);
        B[i] = 0.5 * (v2 - 5.0) * v[i];
    }
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
            for (int l = 0; l < 3; ++l)
                C[j][k][l] = 0.5 * (v[j] * v[k] * v[l] - 3.0 * v[j] * delta(k, l));
}

namespace {

struct BracketTallies {
    double BB[3][3] = {};
    double AA[3][3][3][3] = {};
    double AhA[3][3][3][3] = {};
    double BhB[3][3] = {};
    double BhvA[3][3][3][3] = {};
    double BhvAh[3][3][3][3] = {};
    double BC[3][3][3][3] = {};      // <B_i C_jkl>
    double V4[3][3][3][3] = {};      // <alpha v_i v_j v_k v_l>
    double orthoA[3][3][5] = {};     // <alpha A_ij psi>, psi in {1, v1, v2, v3, |v|^2}
    double v4a = 0, AhA_tr = 0;      // <|v|^4 alpha>, <Ahat:A>
    double w2b = 0, BhB_tr = 0;      // <(|v|^2-5)^2 |v|^2 beta>, <Bhat.B>
    double Bhv_Ah = 0;               // <(Bhat (x) v) : Ahat>
};

// lam is the Ker-L projection coefficient: Bhat_i = beta B_i - lam v_i.
void accumulate(BracketTallies& t, const std::array<double, 3>& v, double w,
                const IsotropicWeight& wa, const IsotropicWeight& wb, double lam) {
    double A[3][3], B[3], C[3][3][3];
    tensor_fields(v, A, B, C);
    double r = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    double al = wa.radial_fn(r);
    double be = wb.radial_fn(r);
    if (!std::isfinite(al) || !std::isfinite(be)) {
        std::ostringstream os;
        os << "verify_appendix: non-finite radial weight at |v| = " << r;
        throw std::domain_error(os.str());
    }
    double v2 = r * r;
    double psi[5] = {1.0, v[0], v[1], v[2], v2};
    double Bh[3];
    for (int i = 0; i < 3; ++i) Bh[i] = be * B[i] - lam * v[i];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            t.BB[i][j] += w * B[i] * B[j];
            t.BhB[i][j] += w * Bh[i] * B[j];
            for (int p = 0; p < 5; ++p) t.orthoA[i][j][p] += w * al * A[i][j] * psi[p];
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l) {
                    t.AA[i][j][k][l] += w * A[i][j] * A[k][l];
                    t.AhA[i][j][k][l] += w * al * A[i][j] * A[k][l];
                    t.BhvA[i][j][k][l] += w * Bh[i] * v[j] * A[k][l];
                    t.BhvAh[i][j][k][l] += w * Bh[i] * v[j] * al * A[k][l];
                    t.BC[i][j][k][l] += w * B[i] * C[j][k][l];
                    t.V4[i][j][k][l] += w * al * v[i] * v[j] * v[k] * v[l];
                }
        }
    double AhA_tr = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) AhA_tr += al * A[i][j] * A[i][j];
    t.AhA_tr += w * AhA_tr;
    t.v4a += w * v2 * v2 * al;
    double d = v2 - 5.0;
    t.w2b += w * d * d * v2 * be;
    double BhdotB = Bh[0] * B[0] + Bh[1] * B[1] + Bh[2] * B[2];
    t.BhB_tr += w * BhdotB;
    double bva = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) bva += Bh[i] * v[j] * al * A[i][j];
    t.Bhv_Ah += w * bva;
}

LemmaReport make_report(const std::string& name, double max_err, double tol,
                        const std::string& worst, double nu = kNan, double kappa = kNan,
                        double c = kNan) {
    LemmaReport r;
    r.identity_name = name;
    r.max_abs_error = max_err;
    r.tolerance = tol;
    r.passed = max_err <= tol;
    r.nu_value = nu;
    r.kappa_value = kappa;
    r.c_value = c;
    r.worst_tuple = worst;
    return r;
}

}  // namespace

std::vector<LemmaReport> verify_appendix(const IsotropicWeight& weight_alpha,
                                         const IsotropicWeight& weight_beta,
                                         const QuadratureSpec& quad, double tol) {
    Quadrature1D q = gaussian_quadrature_1d(quad);
    int n = static_cast<int>(q.nodes.size());
    // Pass 1: lam = (1/6)<beta (|v|^2-5)|v|^2>, the component of beta*B along
    // the collision invariant v. Pass 2 tallies with Bhat = beta*B - lam*v.
    double lam = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double wij = q.weights[i] * q.weights[j];
            for (int k = 0; k < n; ++k) {
                double v2 = q.nodes[i] * q.nodes[i] + q.nodes[j] * q.nodes[j] +
                            q.nodes[k] * q.nodes[k];
                double be = weight_beta.radial_fn(std::sqrt(v2));
                if (!std::isfinite(be)) {
                    std::ostringstream os;
                    os << "verify_appendix: non-finite radial weight at |v| = "
                       << std::sqrt(v2);
                    throw std::domain_error(os.str());
                }
                lam += wij * q.weights[k] * be * (v2 - 5.0) * v2 / 6.0;
            }
        }
    BracketTallies t;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double wij = q.weights[i] * q.weights[j];
            for (int k = 0; k < n; ++k) {
                std::array<double, 3> v{q.nodes[i], q.nodes[j], q.nodes[k]};
                accumulate(t, v, wij * q.weights[k], weight_alpha, weight_beta, lam);
            }
        }

    double nu1 = t.v4a / 15.0, nu2 = t.AhA_tr / 10.0;
    double ka1 = t.w2b / 12.0, ka2 = t.BhB_tr / 3.0;
    double cval = t.Bhv_Ah / 10.0;

    std::vector<LemmaReport> out;
    {
        double worst = 0;
        std::string wt;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double e = std::fabs(t.BB[i][j] - 2.5 * delta(i, j));
                if (e >= worst) worst = e, wt = tuple_name({i, j});
            }
        out.push_back(make_report("<B_i B_j> = (5/2) delta_ij", worst, tol, wt));
    }
    {
        double worst = 0;
        std::string wt;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k)
                    for (int l = 0; l < 3; ++l) {
                        double e = std::fabs(t.AA[i][j][k][l] - a_structure(i, j, k, l));
                        if (e >= worst) worst = e, wt = tuple_name({i, j, k, l});
                    }
        out.push_back(make_report("<A_ij A_kl> = dd+dd-(2/3)dd", worst, tol, wt));
    }
    {
        double worst = std::fabs(nu1 - nu2);
        std::string wt = "(nu formulas)";
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k)
                    for (int l = 0; l < 3; ++l) {
                        double e = std::fabs(t.AhA[i][j][k][l] - nu1 * a_structure(i, j, k, l));
                        if (e >= worst) worst = e, wt = tuple_name({i, j, k, l});
                    }
        out.push_back(make_report("<Ahat_ij A_kl> = nu (dd+dd-(2/3)dd)", worst, tol, wt, nu1));
    }
    {
        double worst = std::fabs(ka1 - ka2);
        std::string wt = "(kappa formulas)";
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double e = std::fabs(t.BhB[i][j] - ka1 * delta(i, j));
                if (e >= worst) worst = e, wt = tuple_name({i, j});
            }
        out.push_back(make_report("<Bhat_i B_j> = kappa delta_ij", worst, tol, wt, kNan, ka1));
    }
    {
        double worst = 0;
        std::string wt;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k)
                    for (int l = 0; l < 3; ++l) {
                        double e =
                            std::fabs(t.BhvA[i][j][k][l] - 0.4 * ka1 * a_structure(i, j, k, l));
                        if (e >= worst) worst = e, wt = tuple_name({i, j, k, l});
                    }
        out.push_back(
            make_report("<Bhat_i v_j A_kl> = (2/5) kappa (dd+dd-(2/3)dd)", worst, tol, wt,
                        kNan, ka1));
    }
    {
        double worst = 0;
        std::string wt;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k)
                    for (int l = 0; l < 3; ++l) {
                        double e =
                            std::fabs(t.BhvAh[i][j][k][l] - cval * a_structure(i, j, k, l));
                        if (e >= worst) worst = e, wt = tuple_name({i, j, k, l});
                    }
        out.push_back(make_report("<Bhat_i v_j Ahat_kl> = c (dd+dd-(2/3)dd)", worst, tol, wt,
                                  kNan, kNan, cval));
    }
    {
        double worst = 0;
        std::string wt;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k)
                    for (int l = 0; l < 3; ++l) {
                        double e = std::fabs(t.BC[i][j][k][l] - 0.5 * sym_structure(i, j, k, l));
                        if (e >= worst) worst = e, wt = tuple_name({i, j, k, l});
                    }
        out.push_back(make_report("<B_i C_jkl> = (1/2)(dd+dd+dd)", worst, tol, wt));
    }
    {
        double worst = 0;
        std::string wt;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int p = 0; p < 5; ++p) {
                    double e = std::fabs(t.orthoA[i][j][p]);
                    if (e >= worst) worst = e, wt = tuple_name({i, j, p});
                }
        out.push_back(make_report("<alpha A_ij psi> = 0, psi in Ker L basis", worst, tol, wt));
    }
    {
        // isotropy: <alpha v_i v_j v_k v_l> = lambda * sym_structure with
        // lambda = <alpha v1^2 v2^2>.
        double lambda = t.V4[0][0][1][1];
        double worst = 0;
        std::string wt;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k)
                    for (int l = 0; l < 3; ++l) {
                        double e =
                            std::fabs(t.V4[i][j][k][l] - lambda * sym_structure(i, j, k, l));
                        if (e >= worst) worst = e, wt = tuple_name({i, j, k, l});
                    }
        out.push_back(make_report("fourth-moment isotropy (weight alpha)", worst, tol, wt));
    }
    return out;
}

}  // namespace gaslab
