#include "gaslab/steady_ns.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>

#include "gaslab/rng.hpp"

namespace gaslab {

namespace {
constexpr double kTwoPi = 6.2831853071795864769;
constexpr double kFourPiSq = 39.478417604357434476;

/// Dense M^3 complex grid with in-place c2c transforms. Synthesis (modes ->
/// samples) is FFTW_BACKWARD for the e^{+2 pi i k.x} convention.
struct Fft3 {
    int M;
    std::vector<std::complex<double>> a;

    explicit Fft3(int m) : M(m), a(static_cast<size_t>(m) * m * m) {}

    void clear() { std::fill(a.begin(), a.end(), std::complex<double>(0, 0)); }
    int wrap(int k) const { return k >= 0 ? k : k + M; }
    std::complex<double>& at(int kx, int ky, int kz) {
        return a[(static_cast<size_t>(wrap(kx)) * M + wrap(ky)) * M + wrap(kz)];
    }

    void execute(int sign) {
        auto* p = reinterpret_cast<fftw_complex*>(a.data());
        fftw_plan plan = fftw_plan_dft_3d(M, M, M, p, p, sign, FFTW_ESTIMATE);
        fftw_execute(plan);
        fftw_destroy_plan(plan);
    }
    void synth() { execute(FFTW_BACKWARD); }
    void analyze() {
        execute(FFTW_FORWARD);
        double inv = 1.0 / (static_cast<double>(M) * M * M);
        for (auto& v : a) v *= inv;
    }
};

int dealias_grid(int N) { return 3 * N + 1; }  // exact for quadratic products

void scatter(const FourierVectorField& v, int comp, Fft3& g) {
    g.clear();
    for (int kx = -v.N; kx <= v.N; ++kx)
        for (int ky = -v.N; ky <= v.N; ++ky)
            for (int kz = -v.N; kz <= v.N; ++kz) g.at(kx, ky, kz) = v.at(kx, ky, kz, comp);
}

void leray_mode(double kx, double ky, double kz, std::complex<double>* c) {
    double k2 = kx * kx + ky * ky + kz * kz;
    if (k2 == 0.0) {
        c[0] = c[1] = c[2] = 0.0;
        return;
    }
    std::complex<double> kc = (kx * c[0] + ky * c[1] + kz * c[2]) / k2;
    c[0] -= kx * kc;
    c[1] -= ky * kc;
    c[2] -= kz * kc;
}

}  // namespace

void FourierVectorField::symmetrize() {
    for (int kx = -N; kx <= N; ++kx)
        for (int ky = -N; ky <= N; ++ky)
            for (int kz = -N; kz <= N; ++kz) {
                if (kx < 0 || (kx == 0 && (ky < 0 || (ky == 0 && kz <= 0)))) continue;
                for (int comp = 0; comp < 3; ++comp) {
                    auto& p = at(kx, ky, kz, comp);
                    auto& m = at(-kx, -ky, -kz, comp);
                    std::complex<double> avg = 0.5 * (p + std::conj(m));
                    p = avg;
                    m = std::conj(avg);
                }
            }
    for (int comp = 0; comp < 3; ++comp) at(0, 0, 0, comp) = 0.0;
}

double FourierVectorField::l2_norm() const {
    double s = 0.0;
    for (const auto& v : c) s += std::norm(v);
    return std::sqrt(s);
}

double FourierVectorField::max_divergence() const {
    double maxdiv = 0.0, maxc = 0.0;
    for (int kx = -N; kx <= N; ++kx)
        for (int ky = -N; ky <= N; ++ky)
            for (int kz = -N; kz <= N; ++kz) {
                std::complex<double> d = double(kx) * at(kx, ky, kz, 0) +
                                         double(ky) * at(kx, ky, kz, 1) +
                                         double(kz) * at(kx, ky, kz, 2);
                maxdiv = std::max(maxdiv, std::abs(d));
                for (int comp = 0; comp < 3; ++comp)
                    maxc = std::max(maxc, std::abs(at(kx, ky, kz, comp)));
            }
    return maxc > 0 ? maxdiv / maxc : 0.0;
}

FourierVectorField leray_project(const FourierVectorField& v) {
    FourierVectorField out = v;
    for (int kx = -v.N; kx <= v.N; ++kx)
        for (int ky = -v.N; ky <= v.N; ++ky)
            for (int kz = -v.N; kz <= v.N; ++kz) {
                std::complex<double> m[3] = {out.at(kx, ky, kz, 0), out.at(kx, ky, kz, 1),
                                             out.at(kx, ky, kz, 2)};
                leray_mode(kx, ky, kz, m);
                for (int comp = 0; comp < 3; ++comp) out.at(kx, ky, kz, comp) = m[comp];
            }
    return out;
}

FourierVectorField bilinear_T(const FourierVectorField& v) {
    const int N = v.N;
    const int M = dealias_grid(N);
    const size_t npts = static_cast<size_t>(M) * M * M;

    std::vector<std::vector<double>> vr(3, std::vector<double>(npts));
    {
        Fft3 g(M);
        for (int comp = 0; comp < 3; ++comp) {
            scatter(v, comp, g);
            g.synth();
            for (size_t i = 0; i < npts; ++i) vr[comp][i] = g.a[i].real();
        }
    }
    // spectra of the six distinct products v_a v_b
    std::vector<Fft3> w;
    w.reserve(6);
    int pair_a[6] = {0, 0, 0, 1, 1, 2};
    int pair_b[6] = {0, 1, 2, 1, 2, 2};
    for (int p = 0; p < 6; ++p) {
        w.emplace_back(M);
        for (size_t i = 0; i < npts; ++i) w[p].a[i] = vr[pair_a[p]][i] * vr[pair_b[p]][i];
        w[p].analyze();
    }
    auto what = [&](int a, int b, int kx, int ky, int kz) -> std::complex<double> {
        static const int slot[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
        return w[slot[a][b]].at(kx, ky, kz);
    };

    FourierVectorField out(N);
    const std::complex<double> iu(0.0, 1.0);
    for (int kx = -N; kx <= N; ++kx)
        for (int ky = -N; ky <= N; ++ky)
            for (int kz = -N; kz <= N; ++kz) {
                double k2 = static_cast<double>(kx) * kx + static_cast<double>(ky) * ky +
                            static_cast<double>(kz) * kz;
                if (k2 == 0.0) continue;
                std::complex<double> m[3];
                for (int a = 0; a < 3; ++a) {
                    // (-Delta)^{-1} [div(v x v)]_a : (2 pi i k_b W_ab) / (4 pi^2 |k|^2)
                    std::complex<double> d = double(kx) * what(a, 0, kx, ky, kz) +
                                             double(ky) * what(a, 1, kx, ky, kz) +
                                             double(kz) * what(a, 2, kx, ky, kz);
                    m[a] = iu * d / (kTwoPi * k2);
                }
                leray_mode(kx, ky, kz, m);
                for (int comp = 0; comp < 3; ++comp) out.at(kx, ky, kz, comp) = m[comp];
            }
    return out;
}

double grad_l2_norm(const FourierVectorField& u) {
    double s = 0.0;
    for (int kx = -u.N; kx <= u.N; ++kx)
        for (int ky = -u.N; ky <= u.N; ++ky)
            for (int kz = -u.N; kz <= u.N; ++kz) {
                double k2 = static_cast<double>(kx) * kx + static_cast<double>(ky) * ky +
                            static_cast<double>(kz) * kz;
                for (int comp = 0; comp < 3; ++comp)
                    s += kFourPiSq * k2 * std::norm(u.at(kx, ky, kz, comp));
            }
    return std::sqrt(s);
}

double hminus1_norm(const FourierVectorField& f) {
    double s = 0.0;
    for (int kx = -f.N; kx <= f.N; ++kx)
        for (int ky = -f.N; ky <= f.N; ++ky)
            for (int kz = -f.N; kz <= f.N; ++kz) {
                double k2 = static_cast<double>(kx) * kx + static_cast<double>(ky) * ky +
                            static_cast<double>(kz) * kz;
                if (k2 == 0.0) continue;
                for (int comp = 0; comp < 3; ++comp)
                    s += std::norm(f.at(kx, ky, kz, comp)) / (kFourPiSq * k2);
            }
    return std::sqrt(s);
}

double viscous_heating_obstruction(const FourierVectorField& u) {
    double s = 0.0;
    for (int kx = -u.N; kx <= u.N; ++kx)
        for (int ky = -u.N; ky <= u.N; ++ky)
            for (int kz = -u.N; kz <= u.N; ++kz) {
                double k[3] = {static_cast<double>(kx), static_cast<double>(ky),
                               static_cast<double>(kz)};
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j) {
                        std::complex<double> e =
                            k[i] * u.at(kx, ky, kz, j) + k[j] * u.at(kx, ky, kz, i);
                        s += kFourPiSq * std::norm(e);
                    }
            }
    return s;
}

void SteadyNsConfig::validate() const {
    if (nu <= 0) throw std::invalid_argument("nu: must be > 0");
    if (N < 1) throw std::invalid_argument("N: must be >= 1");
    if (damping <= 0 || damping > 1) throw std::invalid_argument("damping: must be in (0, 1]");
    if (max_iter < 1) throw std::invalid_argument("max_iter: must be >= 1");
    if (residual_tol <= 0) throw std::invalid_argument("residual_tol: must be > 0");
    if (sobolev_c <= 0) throw std::invalid_argument("sobolev_c: must be > 0");
    if (force.N > N) throw std::invalid_argument("force: resolution exceeds solver N");
}

SteadyNsResult solve_steady(const SteadyNsConfig& cfg) {
    cfg.validate();
    const int N = cfg.N;

    FourierVectorField f(N);
    for (int kx = -cfg.force.N; kx <= cfg.force.N; ++kx)
        for (int ky = -cfg.force.N; ky <= cfg.force.N; ++ky)
            for (int kz = -cfg.force.N; kz <= cfg.force.N; ++kz)
                for (int comp = 0; comp < 3; ++comp)
                    f.at(kx, ky, kz, comp) = cfg.force.at(kx, ky, kz, comp);
    f.symmetrize();

    // u0 = (-nu Delta)^{-1} Pi f
    FourierVectorField u0 = leray_project(f);
    for (int kx = -N; kx <= N; ++kx)
        for (int ky = -N; ky <= N; ++ky)
            for (int kz = -N; kz <= N; ++kz) {
                double k2 = static_cast<double>(kx) * kx + static_cast<double>(ky) * ky +
                            static_cast<double>(kz) * kz;
                if (k2 == 0.0) continue;
                for (int comp = 0; comp < 3; ++comp)
                    u0.at(kx, ky, kz, comp) /= cfg.nu * kFourPiSq * k2;
            }

    SteadyNsResult res;
    res.force_hminus1 = hminus1_norm(f);
    FourierVectorField u = u0;
    double prev_update = 0.0;
    for (int it = 1; it <= cfg.max_iter; ++it) {
        FourierVectorField t = bilinear_T(u);
        FourierVectorField next(N);
        double rnorm = 0.0, upd = 0.0;
        for (size_t i = 0; i < u.c.size(); ++i) {
            std::complex<double> target = u0.c[i] - t.c[i] / cfg.nu;
            std::complex<double> r = target - u.c[i];
            rnorm += std::norm(r);
            next.c[i] = u.c[i] + cfg.damping * r;
            upd += std::norm(next.c[i] - u.c[i]);
        }
        rnorm = std::sqrt(rnorm);
        upd = std::sqrt(upd);
        res.residual_history.push_back(rnorm);
        if (prev_update > 0) res.update_ratios.push_back(upd / prev_update);
        prev_update = upd;
        u = next;
        res.iterations = it;
        res.residual = rnorm;
        if (rnorm < cfg.residual_tol) {
            res.converged = true;
            break;
        }
    }
    res.u = u;
    res.grad_norm = grad_l2_norm(u);
    res.energy_margin = res.force_hminus1 / cfg.nu - res.grad_norm;
    res.obstruction = viscous_heating_obstruction(u);
    res.smallness_held = cfg.sobolev_c * res.force_hminus1 / (cfg.nu * cfg.nu) < 1.0;
    return res;
}

double nsf_theta(const FourierVectorField& u, double kappa, int sweeps, uint64_t seed) {
    const int N = u.N;
    const int M = dealias_grid(N);
    const size_t npts = static_cast<size_t>(M) * M * M;

    std::vector<std::vector<double>> ur(3, std::vector<double>(npts));
    {
        Fft3 g(M);
        for (int comp = 0; comp < 3; ++comp) {
            scatter(u, comp, g);
            g.synth();
            for (size_t i = 0; i < npts; ++i) ur[comp][i] = g.a[i].real();
        }
    }

    // random mean-zero Hermitian seed state with unit L2 norm
    Fft3 th(M);
    th.clear();
    Rng rng(seed);
    for (int kx = -N; kx <= N; ++kx)
        for (int ky = -N; ky <= N; ++ky)
            for (int kz = -N; kz <= N; ++kz) {
                if (kx < 0 || (kx == 0 && (ky < 0 || (ky == 0 && kz <= 0)))) continue;
                std::complex<double> val(rng.normal(), rng.normal());
                th.at(kx, ky, kz) = val;
                th.at(-kx, -ky, -kz) = std::conj(val);
            }
    double n0 = 0.0;
    for (const auto& v : th.a) n0 += std::norm(v);
    n0 = std::sqrt(n0);
    for (auto& v : th.a) v /= n0;

    Fft3 grid(M), wk(M);
    std::vector<std::vector<std::complex<double>>> wspec(3);
    const std::complex<double> iu(0.0, 1.0);
    for (int sweep = 0; sweep < sweeps; ++sweep) {
        grid.a = th.a;
        grid.synth();
        for (int comp = 0; comp < 3; ++comp) {
            for (size_t i = 0; i < npts; ++i) wk.a[i] = ur[comp][i] * grid.a[i].real();
            wk.analyze();
            wspec[comp] = wk.a;
        }
        th.clear();
        auto wat = [&](int comp, int kx, int ky, int kz) {
            return wspec[comp][(static_cast<size_t>(wk.wrap(kx)) * M + wk.wrap(ky)) * M +
                               wk.wrap(kz)];
        };
        for (int kx = -N; kx <= N; ++kx)
            for (int ky = -N; ky <= N; ++ky)
                for (int kz = -N; kz <= N; ++kz) {
                    double k2 = static_cast<double>(kx) * kx + static_cast<double>(ky) * ky +
                                static_cast<double>(kz) * kz;
                    if (k2 == 0.0) continue;
                    // theta_k = (5/2) (2 pi i k.W) / (-4 pi^2 kappa |k|^2)
                    std::complex<double> d = double(kx) * wat(0, kx, ky, kz) +
                                             double(ky) * wat(1, kx, ky, kz) +
                                             double(kz) * wat(2, kx, ky, kz);
                    th.at(kx, ky, kz) = -2.5 * iu * d / (kappa * kTwoPi * k2);
                }
    }
    double s = 0.0;
    for (const auto& v : th.a) s += std::norm(v);
    return std::sqrt(s);
}

FourierVectorField shear_force(int N, double amplitude) {
    FourierVectorField f(N);
    // a sin(2 pi x1) e_3
    f.at(1, 0, 0, 2) = std::complex<double>(0.0, -0.5 * amplitude);
    f.at(-1, 0, 0, 2) = std::complex<double>(0.0, 0.5 * amplitude);
    return f;
}

FourierVectorField random_divfree_force(int N, int kmax, double target_hminus1,
                                        uint64_t seed) {
    if (kmax > N) throw std::invalid_argument("random force: kmax exceeds N");
    FourierVectorField f(N);
    Rng rng(seed);
    for (int kx = -kmax; kx <= kmax; ++kx)
        for (int ky = -kmax; ky <= kmax; ++ky)
            for (int kz = -kmax; kz <= kmax; ++kz) {
                if (kx < 0 || (kx == 0 && (ky < 0 || (ky == 0 && kz <= 0)))) continue;
                std::complex<double> m[3];
                for (int comp = 0; comp < 3; ++comp)
                    m[comp] = std::complex<double>(rng.normal(), rng.normal());
                leray_mode(kx, ky, kz, m);
                for (int comp = 0; comp < 3; ++comp) {
                    f.at(kx, ky, kz, comp) = m[comp];
                    f.at(-kx, -ky, -kz, comp) = std::conj(m[comp]);
                }
            }
    double h = hminus1_norm(f);
    if (h == 0.0) throw std::invalid_argument("random force: degenerate draw");
    double fac = target_hminus1 / h;
    for (auto& v : f.c) v *= fac;
    return f;
}

}  // namespace gaslab
