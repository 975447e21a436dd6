// bergman.hpp -- the weighted Bergman space of the disk as coefficient
// sequences in the normalized monomial basis z^k/sqrt(c_k): evaluation,
// inner products, reproducing kernels, the density u = |f|^2 (1-|z|^2)^(a+2),
// its distribution function rho, the decreasing rearrangement u*, the
// radial comparison profile v*, and the unitary Mobius transport used to
// move the peak of u to the origin.

#pragma once

#include <map>
#include <utility>

#include "hyperbolic.hpp"
#include "specfun.hpp"

namespace hypconc {

class BergmanFunction {
  public:
    BergmanFunction(AlphaParam alpha, std::vector<complexd> coeffs)
        : alpha_(alpha), a_(std::move(coeffs)) {
        if (a_.empty()) a_.push_back(0.0);
        rebuild_monomial();
    }

    const AlphaParam& alpha() const { return alpha_; }
    const std::vector<complexd>& coeffs() const { return a_; }
    const std::vector<complexd>& monomial_coeffs() const { return b_; }
    int degree() const { return int(a_.size()) - 1; }

    double norm2() const {
        double s = 0.0;
        for (const auto& c : a_) s += std::norm(c);
        return s;
    }
    double norm() const { return std::sqrt(norm2()); }

    BergmanFunction normalized() const {
        const double n = norm();
        if (!(n > 0.0))
            throw std::domain_error("BergmanFunction: cannot normalize 0");
        std::vector<complexd> c = a_;
        for (auto& x : c) x /= n;
        return BergmanFunction(alpha_, std::move(c));
    }

    BergmanFunction scaled(complexd factor) const {
        std::vector<complexd> c = a_;
        for (auto& x : c) x *= factor;
        return BergmanFunction(alpha_, std::move(c));
    }

    // Drop a trailing run of negligible coefficients.
    void trim(double rel = 1e-16) {
        double mx = 0.0;
        for (const auto& c : a_) mx = std::max(mx, std::abs(c));
        size_t n = a_.size();
        while (n > 1 && std::abs(a_[n - 1]) < rel * mx) --n;
        if (n != a_.size()) {
            a_.resize(n);
            rebuild_monomial();
        }
    }

    bool tail_warning = false;  // set by kernel construction on truncation

  private:
    void rebuild_monomial() {
        b_.resize(a_.size());
        for (size_t k = 0; k < a_.size(); ++k)
            b_[k] = a_[k] *
                    std::exp(-0.5 * log_basis_norm_c(int(k), alpha_));
    }
    AlphaParam alpha_;
    std::vector<complexd> a_;
    std::vector<complexd> b_;
};

inline complexd evaluate(const BergmanFunction& f, complexd z) {
    if (!(std::abs(z) < 1.0))
        throw std::domain_error("evaluate: require |z| < 1");
    const auto& b = f.monomial_coeffs();
    complexd acc = 0.0;
    for (size_t k = b.size(); k-- > 0;) acc = acc * z + b[k];
    return acc;
}

inline complexd inner(const BergmanFunction& f, const BergmanFunction& g) {
    if (f.alpha().value() != g.alpha().value())
        throw std::invalid_argument("inner: mismatched alpha");
    const size_t n = std::min(f.coeffs().size(), g.coeffs().size());
    complexd s = 0.0;
    for (size_t k = 0; k < n; ++k)
        s += f.coeffs()[k] * std::conj(g.coeffs()[k]);
    return s;
}

// Normalized reproducing kernel f_omega, coefficients
//   a_k = exp(L_k) (conj(omega)/|omega|)^k,
//   L_k = -ln(Gamma(a+2))/2 + (a+2)/2 log(1-|w|^2)
//         + [ln Gamma(a+2+k) - ln Gamma(k+1)]/2 + k ln|w|.
// The truncation tail 1 - sum |a_k|^2 is tracked; N doubles until the
// tail clears 1e-10 (or the cap flags a warning).
inline BergmanFunction kernel_function(const AlphaParam& alpha, complexd omega,
                                       int N = 48) {
    if (!(std::abs(omega) < 1.0))
        throw std::domain_error("kernel_function: require |omega| < 1");
    const double aw = std::abs(omega);
    if (aw < 1e-300) {
        std::vector<complexd> c(size_t(std::max(N, 1)) + 1, 0.0);
        c[0] = 1.0;
        return BergmanFunction(alpha, std::move(c));
    }
    const double lg_a2 = ln_gamma(alpha.p1() + 1.0);
    const complexd phase = std::conj(omega) / aw;
    const double lw = std::log(aw);
    const double base =
        -0.5 * lg_a2 + 0.5 * (alpha.p1() + 1.0) * std::log1p(-aw * aw);

    int cap = std::max(N, 8);
    for (;;) {
        std::vector<complexd> c(size_t(cap) + 1);
        double sum2 = 0.0;
        complexd ph = 1.0;
        for (int k = 0; k <= cap; ++k) {
            const double Lk = base +
                              0.5 * (ln_gamma(alpha.p1() + 1.0 + k) -
                                     ln_gamma(double(k) + 1.0)) +
                              k * lw;
            c[k] = std::exp(Lk) * ph;
            sum2 += std::norm(c[k]);
            ph *= phase;
        }
        const double tail = std::max(0.0, 1.0 - sum2);
        if (tail <= 1e-10 || cap >= 4096) {
            BergmanFunction f(alpha, std::move(c));
            f.tail_warning = tail > 1e-10;
            return f;
        }
        cap *= 2;
    }
}

inline double u_density(const BergmanFunction& f, complexd z) {
    const double t = std::norm(z);
    return std::norm(evaluate(f, z)) *
           std::pow(1.0 - t, f.alpha().p1() + 1.0);
}

// v*(s) = (alpha+1)/pi (1 + s/pi)^(-alpha-2).
inline double v_star(const AlphaParam& alpha, double s) {
    if (!(s >= 0.0)) throw std::domain_error("v_star: require s >= 0");
    return alpha.p1() / kPi * pow1p(s / kPi, -(alpha.p1() + 1.0));
}

// Super-level cell mask of u at level t.
inline GridMask super_level_set(const BergmanFunction& f, double t,
                                std::shared_ptr<const QuadratureGrid> grid) {
    if (!(t > 0.0)) throw std::domain_error("super_level_set: require t > 0");
    GridMask m;
    m.grid = grid;
    m.cells.assign(grid->cell_count(), 0);
    for (int ring = 0; ring < grid->n_radial(); ++ring)
        for (int sec = 0; sec < grid->angular_count(); ++sec)
            if (u_density(f, grid->cell_center(ring, sec)) > t)
                m.cells[grid->cell_index(ring, sec)] = 1;
    return m;
}

// ---------------------------------------------------------------------------
// Distribution function rho(t) = mu({u > t}) by ray-wise segment measure:
// per angle the super-level segments of the radial slice are located by
// scan + bisection and measured through the closed-form radial
// antiderivative of mu.  Spectrally accurate in the angle, bisection-
// accurate in r; in particular exact for radial profiles.

class DensityProfile {
  public:
    explicit DensityProfile(const BergmanFunction& f, int angular = 256,
                            int n_scan = 512)
        : f_(f.normalized()), angular_(angular), n_scan_(n_scan) {
        compute_max();
    }

    double max_u() const { return T_; }
    complexd argmax() const { return peak_; }

    double rho(double t) const {
        if (!(t > 0.0))
            throw std::domain_error("distribution_rho: require t > 0");
        if (t >= T_) return 0.0;
        // beyond this radius u <= bound < t for sure
        const double t_hi = outer_t_bound(t);
        double acc = 0.0;
        for (int m = 0; m < angular_; ++m)
            acc += ray_measure(2.0 * kPi * (m + 0.5) / angular_, t, t_hi);
        return acc * (2.0 * kPi / angular_);
    }

    // Bisection on rho(t) = s; tolerance 1e-10 * T.
    double u_star(double s) const {
        if (!(s > 0.0)) throw std::domain_error("u_star: require s > 0");
        auto it = memo_.find(s);
        if (it != memo_.end()) return it->second;
        double hi = T_, lo = T_;
        for (int k = 0; k < 200; ++k) {
            lo *= 0.5;
            if (rho(lo) >= s) break;
            hi = lo;
        }
        if (rho(lo) < s)
            throw std::runtime_error("u_star: measure target unreachable");
        const double tol = 1e-10 * T_;
        while (hi - lo > tol) {
            const double mid = 0.5 * (lo + hi);
            (rho(mid) >= s ? lo : hi) = mid;
        }
        const double t = 0.5 * (lo + hi);
        memo_.emplace(s, t);
        return t;
    }

    // \int_{t_lo}^{t_hi} rho(t) dt by panel Gauss-Legendre.
    double rho_integral(double t_lo, double t_hi, int n = 96) const {
        std::vector<double> x, w;
        gauss_legendre_ab(n, t_lo, t_hi, x, w);
        double acc = 0.0;
        for (int i = 0; i < n; ++i) acc += w[i] * rho(x[i]);
        return acc;
    }

    const BergmanFunction& normalized_function() const { return f_; }

  private:
    void compute_max() {
        // coarse polar scan, then simplex refinement
        double best = 0.0;
        complexd bz = 0.0;
        for (int i = 0; i < 64; ++i) {
            const double r = 0.995 * i / 63.0;
            for (int j = 0; j < 64; ++j) {
                const complexd z = std::polar(r, 2.0 * kPi * j / 64.0);
                const double v = u_density(f_, z);
                if (v > best) {
                    best = v;
                    bz = z;
                }
            }
        }
        auto neg = [&](std::array<double, 2> p) {
            const complexd z(p[0], p[1]);
            if (!(std::abs(z) < 0.9999)) return 1.0;
            return -u_density(f_, z);
        };
        auto [pt, val] =
            detail::nelder_mead_2d(neg, {bz.real(), bz.imag()}, 0.01, 1e-12);
        T_ = std::max(best, -val);
        peak_ = -val > best ? complexd(pt[0], pt[1]) : bz;
        // coefficient-sum envelope |f(z)|^2 <= S^2
        double S = 0.0;
        for (const auto& b : f_.monomial_coeffs()) S += std::abs(b);
        env2_ = S * S;
    }

    double outer_t_bound(double t) const {
        // u(r) <= env2 (1-r^2)^(a+2) < t  =>  1-r^2 < (t/env2)^(1/(a+2))
        const double q =
            std::pow(t / env2_, 1.0 / (f_.alpha().p1() + 1.0));
        return std::min(1.0 - std::min(q, 1.0), 1.0 - 1e-14);
    }

    double ray_measure(double theta, double t, double t_hi) const {
        const complexd dir = std::polar(1.0, theta);
        auto u_at = [&](double tt) {
            return u_density(f_, dir * std::sqrt(tt));
        };
        double acc = 0.0;
        double prev_t = 0.0;
        double prev_u = u_at(0.0);
        double open_at = prev_u > t ? 0.0 : -1.0;
        for (int i = 1; i <= n_scan_; ++i) {
            const double tt = t_hi * i / n_scan_;
            const double uu = u_at(tt);
            if ((prev_u > t) != (uu > t)) {
                double lo = prev_t, hi = tt;
                for (int b = 0; b < 80; ++b) {
                    const double mid = 0.5 * (lo + hi);
                    ((u_at(mid) > t) == (prev_u > t) ? lo : hi) = mid;
                    if (hi - lo < 1e-16) break;
                }
                const double cross = 0.5 * (lo + hi);
                if (open_at >= 0.0) {
                    acc += 0.5 * (cross / (1.0 - cross) -
                                  open_at / (1.0 - open_at));
                    open_at = -1.0;
                } else {
                    open_at = cross;
                }
            }
            prev_t = tt;
            prev_u = uu;
        }
        if (open_at >= 0.0)
            acc += 0.5 * (t_hi / (1.0 - t_hi) - open_at / (1.0 - open_at));
        return acc;
    }

    BergmanFunction f_;
    int angular_, n_scan_;
    double T_ = 0.0, env2_ = 1.0;
    complexd peak_ = 0.0;
    mutable std::map<double, double> memo_;
};

inline double distribution_rho(const BergmanFunction& f, double t,
                               int angular = 256) {
    return DensityProfile(f, angular).rho(t);
}

// ---------------------------------------------------------------------------
// Unitary Mobius transport: (U_a f)(z) = f(phi_a(z)) phi_a'(z)^{(a+2)/2}
// with phi_a(z) = (z+a)/(1+conj(a)z), so u_{U_a f}(z) = u_f(phi_a(z)) and
// the peak of u moves from a to the origin.  Exact coefficient arithmetic:
// polynomial times a binomial series.

inline BergmanFunction mobius_transport(const BergmanFunction& f, complexd a,
                                        int n_out = 0) {
    if (!(std::abs(a) < 1.0))
        throw std::domain_error("mobius_transport: require |a| < 1");
    const AlphaParam& al = f.alpha();
    const int d = f.degree();
    if (std::abs(a) < 1e-300) return f;
    if (n_out <= 0) n_out = std::max(4 * (d + 1), 64);
    n_out = std::min(n_out, 4096);

    const complexd ab = std::conj(a);
    // P(z) = sum_k b_k (z+a)^k (1+ab z)^(d-k), degree d
    std::vector<complexd> P(size_t(d) + 1, 0.0);
    std::vector<complexd> za(size_t(d) + 1), oz(size_t(d) + 1);
    for (int k = 0; k <= d; ++k) {
        // (z+a)^k
        std::fill(za.begin(), za.end(), complexd(0.0));
        za[0] = 1.0;
        for (int j = 0; j < k; ++j)
            for (int i = j + 1; i >= 0; --i)
                za[i] = (i > 0 ? za[i - 1] : complexd(0.0)) + a * za[i];
        // (1+ab z)^(d-k)
        std::fill(oz.begin(), oz.end(), complexd(0.0));
        oz[0] = 1.0;
        for (int j = 0; j < d - k; ++j)
            for (int i = j + 1; i >= 0; --i)
                oz[i] = (i > 0 ? ab * oz[i - 1] : complexd(0.0)) + oz[i];
        const complexd bk = f.monomial_coeffs()[k];
        for (int i = 0; i <= k; ++i)
            for (int j = 0; j <= d - k; ++j) P[i + j] += bk * za[i] * oz[j];
    }

    // (1+ab z)^{-beta}, beta = alpha+2+d, truncated binomial series
    const double beta = al.p1() + 1.0 + d;
    std::vector<complexd> series(size_t(n_out) + 1);
    series[0] = 1.0;
    for (int j = 1; j <= n_out; ++j)
        series[j] = series[j - 1] * (-(beta + j - 1.0) / j) * ab;

    const double front =
        std::exp(0.5 * (al.p1() + 1.0) * std::log1p(-std::norm(a)));
    std::vector<complexd> out(size_t(n_out) + 1, 0.0);
    for (int i = 0; i <= d; ++i)
        for (int j = 0; i + j <= n_out; ++j) out[i + j] += P[i] * series[j];

    std::vector<complexd> coeffs(out.size());
    for (size_t k = 0; k < out.size(); ++k)
        coeffs[k] = front * out[k] *
                    std::exp(0.5 * log_basis_norm_c(int(k), al));
    BergmanFunction g(al, std::move(coeffs));
    g.trim();
    return g;
}

// Rotate the coefficients so f(0) becomes real positive (no-op if f(0)=0).
inline BergmanFunction phase_normalize(const BergmanFunction& f) {
    const complexd f0 = f.coeffs()[0];
    if (std::abs(f0) < 1e-300) return f;
    return f.scaled(std::conj(f0) / std::abs(f0));
}

}  // namespace hypconc
