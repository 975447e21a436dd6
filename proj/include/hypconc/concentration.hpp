// concentration.hpp -- concentration functionals on the disk: the sharp
// bound theta_alpha(s) = 1 - (1+s/pi)^{-alpha-1}, the concentration
// integral of u over a set, the localization (Toeplitz-type) matrix in the
// truncated basis with its top eigenvalue, deficits, and the wavelet
// deficit transported from the upper half-plane.
//
// Matrix/integral paths: analytic discs get a disc-adapted polar rule
// (spectral accuracy); cell masks get exact ring x sector closed forms
// (incomplete-Beta differences times sector phase integrals), so discrete
// deficits inherit the sharp inequality of the underlying true set.

#pragma once

#include "bergman.hpp"
#include "linalg.hpp"
#include "transforms.hpp"

namespace hypconc {

inline double theta(const AlphaParam& alpha, double s) {
    if (!(s >= 0.0)) throw std::domain_error("theta: require s >= 0");
    return -std::expm1(-alpha.p1() * std::log1p(s / kPi));
}

// theta_alpha(s) / (alpha+1), stable down to alpha+1 ~ 1e-300.
inline double theta_over_alpha_p1(const AlphaParam& alpha, double s) {
    const double L = std::log1p(s / kPi);
    const double x = alpha.p1() * L;
    if (std::fabs(x) < 1e-280) return L;
    return -std::expm1(-x) / alpha.p1();
}

struct LocalizationMatrix {
    AlphaParam alpha;
    double s = 0.0;  // mu-measure of the set
    HermitianMatrix T;
};

namespace detail {

// 1/sqrt(c_k), k = 0..N.
inline std::vector<double> basis_scales(const AlphaParam& alpha, int N) {
    std::vector<double> s(size_t(N) + 1);
    for (int k = 0; k <= N; ++k)
        s[k] = std::exp(-0.5 * log_basis_norm_c(k, alpha));
    return s;
}

// Assembly over a disc-adapted polar rule.
inline HermitianMatrix disc_matrix(const AlphaParam& alpha,
                                   const AnalyticDisc& d, int N) {
    const int n_rad = std::max(64, N + 16);
    const int n_ang = std::max(2 * N + 4, 128);
    const PolarRule rule = disc_rule(d.euclidean_center, d.euclidean_radius,
                                     n_rad, n_ang);
    HermitianMatrix T(N + 1);
    const std::vector<double> scale = basis_scales(alpha, N);
    std::vector<complexd> e(size_t(N) + 1);
    const double ang_w = kPi / rule.theta.size();
    for (size_t j = 0; j < rule.rho2.size(); ++j) {
        const double rho = std::sqrt(rule.rho2[j]);
        for (double th : rule.theta) {
            const complexd z = rule.center + std::polar(rho, th);
            const double wq = ang_w * rule.wrho2[j] *
                              std::pow(1.0 - std::norm(z), alpha.value());
            complexd zk = 1.0;
            for (int k = 0; k <= N; ++k) {
                e[k] = zk * scale[k];
                zk *= z;
            }
            for (int m = 0; m <= N; ++m)
                for (int n = 0; n <= m; ++n)
                    T.at(m, n) += wq * e[m] * std::conj(e[n]);
        }
    }
    for (int m = 0; m <= N; ++m)
        for (int n = m + 1; n <= N; ++n) T.at(m, n) = std::conj(T.at(n, m));
    return T;
}

// Exact assembly over a cell mask: T[m][n] = sum_ring R_{m+n} S_{m-n} /
// sqrt(c_m c_n) with radial incomplete-Beta factors and angular phase
// integrals over the included sectors.
inline HermitianMatrix mask_matrix(const AlphaParam& alpha, const GridMask& M,
                                   int N) {
    const QuadratureGrid& g = *M.grid;
    const int nr = g.n_radial(), na = g.angular_count();
    HermitianMatrix T(N + 1);

    // radial: R_p(ring) = (1/2) \int_{ta}^{tb} t^{p/2} (1-t)^alpha dt
    std::vector<std::vector<double>> R(nr, std::vector<double>(2 * N + 1));
    for (int p = 0; p <= 2 * N; ++p) {
        const double a = 0.5 * p + 1.0, b = alpha.p1();
        const double lnB = ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b);
        double prev = 0.0;
        for (int ring = 0; ring < nr; ++ring) {
            const double cur = reg_inc_beta(g.cell_t_hi(ring), a, b);
            R[ring][p] = 0.5 * std::exp(lnB) * (cur - prev);
            prev = cur;
        }
    }

    // angular: S_d(ring) = sum of \int e^{i d theta} over included sectors
    const double dth = g.cell_dtheta();
    std::vector<std::vector<complexd>> S(nr,
                                         std::vector<complexd>(N + 1, 0.0));
    for (int ring = 0; ring < nr; ++ring) {
        for (int sec = 0; sec < na; ++sec) {
            if (!M.cells[g.cell_index(ring, sec)]) continue;
            const double th0 = sec * dth, th1 = th0 + dth;
            for (int d = 0; d <= N; ++d) {
                if (d == 0) {
                    S[ring][0] += dth;
                } else {
                    const complexd id(0.0, double(d));
                    S[ring][d] +=
                        (std::exp(id * th1) - std::exp(id * th0)) / id;
                }
            }
        }
    }

    for (int m = 0; m <= N; ++m)
        for (int n = 0; n <= m; ++n) {
            const double inv_sqrt_c =
                std::exp(-0.5 * (log_basis_norm_c(m, alpha) +
                                 log_basis_norm_c(n, alpha)));
            complexd acc = 0.0;
            for (int ring = 0; ring < nr; ++ring)
                acc += R[ring][m + n] * S[ring][m - n];
            T.at(m, n) = acc * inv_sqrt_c;
        }
    for (int m = 0; m <= N; ++m)
        for (int n = m + 1; n <= N; ++n) T.at(m, n) = std::conj(T.at(n, m));
    return T;
}

}  // namespace detail

inline LocalizationMatrix localization_matrix(const AlphaParam& alpha,
                                              const HyperbolicSet& S, int N) {
    if (N < 0) throw std::domain_error("localization_matrix: N >= 0");
    LocalizationMatrix lm{alpha, mu_measure(S), HermitianMatrix(N + 1)};
    if (std::holds_alternative<AnalyticDisc>(S)) {
        const auto& d = std::get<AnalyticDisc>(S);
        if (!(std::abs(d.euclidean_center) + d.euclidean_radius < 1.0))
            throw std::domain_error("localization_matrix: set reaches the boundary");
        lm.T = detail::disc_matrix(alpha, d, N);
    } else {
        lm.T = detail::mask_matrix(alpha, std::get<GridMask>(S), N);
    }
    return lm;
}

struct TopEigen {
    double lambda = 0.0;
    BergmanFunction eigvec;
};

inline TopEigen lambda_max(const LocalizationMatrix& lm) {
    const int n = lm.T.dim();
    const double defect = lm.T.max_hermiticity_defect();
    if (defect > 1e-9)
        throw std::runtime_error("lambda_max: matrix not Hermitian, defect " +
                                 std::to_string(defect));
    EigResult eig = hermitian_eigen(lm.T);
    const double lo = eig.values.front(), hi = eig.values.back();
    if (lo < -1e-8 || hi > 1.0 + 1e-8)
        throw std::runtime_error(
            "lambda_max: spectrum escapes [0,1]: [" + std::to_string(lo) +
            ", " + std::to_string(hi) + "]");
    std::vector<complexd> v(eig.vector(n - 1), eig.vector(n - 1) + n);
    const double res = eigen_residual(lm.T, v, hi);
    if (res > 1e-9 * std::max(1.0, std::fabs(hi)))
        throw std::runtime_error("lambda_max: eigen residual " +
                                 std::to_string(res));
    // fix an overall phase: largest component real positive
    int imax = 0;
    for (int i = 1; i < n; ++i)
        if (std::abs(v[i]) > std::abs(v[imax])) imax = i;
    if (std::abs(v[imax]) > 0)
        for (auto& c : v) c *= std::conj(v[imax]) / std::abs(v[imax]);
    return {std::clamp(hi, 0.0, 1.0), BergmanFunction(lm.alpha, std::move(v))};
}

// \int_Omega u dmu = \int_Omega |f|^2 (1-|z|^2)^alpha dA.
inline double concentration_integral(const BergmanFunction& f,
                                     const HyperbolicSet& S) {
    const AlphaParam& alpha = f.alpha();
    if (std::holds_alternative<AnalyticDisc>(S)) {
        const auto& d = std::get<AnalyticDisc>(S);
        const int deg = f.degree();
        const PolarRule rule =
            disc_rule(d.euclidean_center, d.euclidean_radius,
                      std::max(64, deg + 16), std::max(2 * deg + 4, 128));
        return disc_integrate_real(rule, [&](complexd z) {
            return std::norm(evaluate(f, z)) *
                   std::pow(1.0 - std::norm(z), alpha.value());
        });
    }
    const GridMask& m = std::get<GridMask>(S);
    const int N = f.degree();
    const HermitianMatrix T = detail::mask_matrix(alpha, m, N);
    complexd acc = 0.0;
    for (int i = 0; i <= N; ++i)
        for (int j = 0; j <= N; ++j)
            acc += std::conj(f.coeffs()[i]) * T.at(i, j) * f.coeffs()[j];
    return acc.real();
}

// Same integral for a pointwise-evaluable density |g|^2; cell-GL path.
template <typename G>
double concentration_integral_fn(G&& g, const AlphaParam& alpha,
                                 const HyperbolicSet& S) {
    if (std::holds_alternative<AnalyticDisc>(S)) {
        const auto& d = std::get<AnalyticDisc>(S);
        const PolarRule rule =
            disc_rule(d.euclidean_center, d.euclidean_radius, 96, 192);
        return disc_integrate_real(rule, [&](complexd z) {
            return std::norm(g(z)) *
                   std::pow(1.0 - std::norm(z), alpha.value());
        });
    }
    const GridMask& m = std::get<GridMask>(S);
    return cell_integrate_real(
        *m.grid, m.cells,
        [&](complexd z) { return std::norm(g(z)); }, Weight::bergman_alpha,
        alpha, 5);
}

struct DeficitReport {
    double s = 0.0;
    double theta = 0.0;
    double concentration = 0.0;
    double deficit = 0.0;
    double f_norm = 0.0;
};

// delta(f; Omega, alpha) = 1 - conc / (||f||^2 theta_alpha(s)).
// Squared norm in the denominator: the equality case delta = 0 for
// kernel/disc pairs forces the square.
inline DeficitReport deficit(const BergmanFunction& f,
                             const HyperbolicSet& S) {
    DeficitReport rep;
    rep.f_norm = f.norm();
    if (!(rep.f_norm > 0.0)) throw std::domain_error("deficit: ||f|| = 0");
    rep.s = mu_measure(S);
    if (!(rep.s > 0.0)) throw std::domain_error("deficit: mu(Omega) = 0");
    rep.theta = theta(f.alpha(), rep.s);
    rep.concentration = concentration_integral(f, S);
    rep.deficit =
        1.0 - rep.concentration / (rep.f_norm * rep.f_norm * rep.theta);
    return rep;
}

// ---------------------------------------------------------------------------
// Wavelet deficit of order beta, computed by transporting everything to
// the disk: alpha = 2 beta - 1, s = nu(Omega)/4, the signal mapped through
// B_alpha then T_alpha.

struct WaveletDeficitReport {
    double nu = 0.0;
    double s_disk = 0.0;
    double deficit = 0.0;
};

inline WaveletDeficitReport wavelet_deficit(const HalfPlaneSignal& F,
                                            const HalfPlaneDisc& Omega,
                                            double beta) {
    if (!(beta > 0.0)) throw std::domain_error("wavelet_deficit: beta > 0");
    const AlphaParam alpha(2.0 * beta - 1.0);
    WaveletDeficitReport rep;
    rep.nu = nu_measure(Omega);
    rep.s_disk = rep.nu / 4.0;
    const AnalyticDisc img = cayley_to_disc(Omega);
    const DiskImage g(F, alpha);
    const double conc = concentration_integral_fn(g, alpha, HyperbolicSet(img));
    rep.deficit = 1.0 - conc / (F.norm2() * theta(alpha, rep.s_disk));
    return rep;
}

inline WaveletDeficitReport wavelet_deficit(
    const HalfPlaneSignal& F, const HalfPlaneMask& Omega, double beta,
    std::shared_ptr<const QuadratureGrid> disk_grid) {
    if (!(beta > 0.0)) throw std::domain_error("wavelet_deficit: beta > 0");
    const AlphaParam alpha(2.0 * beta - 1.0);
    WaveletDeficitReport rep;
    rep.nu = nu_measure(Omega);
    rep.s_disk = rep.nu / 4.0;
    const GridMask img = cayley_to_disc(Omega, disk_grid);
    const DiskImage g(F, alpha);
    const double conc = concentration_integral_fn(g, alpha, HyperbolicSet(img));
    rep.deficit = 1.0 - conc / (F.norm2() * theta(alpha, rep.s_disk));
    return rep;
}

}  // namespace hypconc
