// quadrature.hpp -- deterministic polar quadrature on the unit disk.
//
// Two layers share one grid object:
//   * a tensor rule (Gauss-Legendre in t = r^2 times a uniform angular
//     lattice) for smooth integrands over the truncated disk; the angular
//     lattice integrates z^m conj(z)^n exactly in theta for |m-n| < M;
//   * a cell decomposition (uniform rings in t times the same sectors)
//     carrying closed-form cell measures, so set masks are exact unions
//     of cells and their measures carry no rasterization error.

#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "specfun.hpp"

namespace hypconc {

using complexd = std::complex<double>;

// Gauss-Legendre nodes/weights on (-1,1), Newton iteration on P_n.
inline void gauss_legendre(int n, std::vector<double>& x,
                           std::vector<double>& w) {
    if (n < 1) throw std::domain_error("gauss_legendre: n >= 1");
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::fabs(z - z1) < 1e-15) break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
}

// Gauss-Legendre on (a,b).
inline void gauss_legendre_ab(int n, double a, double b,
                              std::vector<double>& x, std::vector<double>& w) {
    gauss_legendre(n, x, w);
    const double xm = 0.5 * (b + a), xl = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) {
        x[i] = xm + xl * x[i];
        w[i] *= xl;
    }
}

enum class Weight { plain, bergman_alpha, hyperbolic };

class QuadratureGrid {
  public:
    QuadratureGrid(int n_radial, int angular_count, double r_max)
        : nr_(n_radial), na_(angular_count), r_max_(r_max),
          t_max_(r_max * r_max) {
        if (n_radial < 4) throw std::domain_error("build_grid: n_radial >= 4");
        if (angular_count < 8)
            throw std::domain_error("build_grid: angular_count >= 8");
        if (!(r_max > 0.0) || !(r_max < 1.0))
            throw std::domain_error(
                "build_grid: r_max must lie in (0,1); the hyperbolic weight "
                "is not integrable up to the boundary");
        gauss_legendre_ab(nr_, 0.0, t_max_, t_, wt_);
        theta_.resize(na_);
        for (int m = 0; m < na_; ++m)
            theta_[m] = 2.0 * kPi * (m + 0.5) / na_;
    }

    int n_radial() const { return nr_; }
    int angular_count() const { return na_; }
    double r_max() const { return r_max_; }
    double t_max() const { return t_max_; }
    const std::vector<double>& radial_nodes() const { return t_; }
    const std::vector<double>& radial_weights() const { return wt_; }
    const std::vector<double>& angles() const { return theta_; }

    int node_count() const { return nr_ * na_; }
    int node_index(int j, int m) const { return j * na_ + m; }
    complexd node(int j, int m) const {
        return std::polar(std::sqrt(t_[j]), theta_[m]);
    }

    // --- cell layer -------------------------------------------------------
    int cell_count() const { return nr_ * na_; }
    int cell_index(int ring, int sector) const { return ring * na_ + sector; }
    double cell_t_lo(int ring) const { return t_max_ * ring / nr_; }
    double cell_t_hi(int ring) const { return t_max_ * (ring + 1) / nr_; }
    double cell_dtheta() const { return 2.0 * kPi / na_; }
    complexd cell_center(int ring, int sector) const {
        const double t = 0.5 * (cell_t_lo(ring) + cell_t_hi(ring));
        return std::polar(std::sqrt(t), theta_[sector]);
    }
    double cell_area(int ring) const {
        return 0.5 * cell_dtheta() * (cell_t_hi(ring) - cell_t_lo(ring));
    }
    double cell_mu(int ring) const {
        const double a = cell_t_lo(ring), b = cell_t_hi(ring);
        return 0.5 * cell_dtheta() * (1.0 / (1.0 - b) - 1.0 / (1.0 - a));
    }
    double cell_alpha_mass(int ring, const AlphaParam& alpha) const {
        const double a = cell_t_lo(ring), b = cell_t_hi(ring);
        const double p = alpha.p1();
        return 0.5 * cell_dtheta() *
               (std::pow(1.0 - a, p) - std::pow(1.0 - b, p)) / p;
    }

  private:
    int nr_, na_;
    double r_max_, t_max_;
    std::vector<double> t_, wt_, theta_;
};

inline QuadratureGrid build_grid(int n_radial, int angular_count,
                                 double r_max) {
    return QuadratureGrid(n_radial, angular_count, r_max);
}

// Truncation radius for which the omitted annulus carries less than
// 1e-12 of the total (1-|z|^2)^alpha mass, clamped to what doubles can
// represent; sets are expected to stay well inside it.
inline double default_r_max(const AlphaParam& alpha) {
    double tail = std::exp(std::log(1e-12) / alpha.p1());
    if (tail < 1e-13) tail = 1e-13;
    if (tail > 5e-2) tail = 5e-2;
    return std::sqrt(1.0 - tail);
}

inline double weight_factor(Weight w, double t, const AlphaParam& alpha) {
    switch (w) {
        case Weight::plain: return 1.0;
        case Weight::bergman_alpha: return std::pow(1.0 - t, alpha.value());
        case Weight::hyperbolic: {
            const double q = 1.0 - t;
            return 1.0 / (q * q);
        }
    }
    return 1.0;
}

// Weighted sum over the tensor rule; samples flattened radial-major.
inline complexd integrate(const QuadratureGrid& grid,
                          const std::vector<complexd>& samples, Weight weight,
                          const AlphaParam& alpha) {
    if (static_cast<int>(samples.size()) != grid.node_count())
        throw std::invalid_argument("integrate: sample/grid shape mismatch");
    const double ang_w = kPi / grid.angular_count();  // (2pi/M) * (1/2 dt->dA)
    complexd total = 0.0;
    for (int j = 0; j < grid.n_radial(); ++j) {
        const double wj = grid.radial_weights()[j] *
                          weight_factor(weight, grid.radial_nodes()[j], alpha);
        complexd ring = 0.0;
        for (int m = 0; m < grid.angular_count(); ++m)
            ring += samples[grid.node_index(j, m)];
        total += wj * ring;
    }
    return ang_w * total;
}

template <typename F>
complexd integrate_fn(const QuadratureGrid& grid, F&& f, Weight weight,
                      const AlphaParam& alpha) {
    std::vector<complexd> samples(grid.node_count());
    for (int j = 0; j < grid.n_radial(); ++j)
        for (int m = 0; m < grid.angular_count(); ++m)
            samples[grid.node_index(j, m)] = f(grid.node(j, m));
    return integrate(grid, samples, weight, alpha);
}

// ---------------------------------------------------------------------------
// Disc-adapted rules: polar tensor rule over a Euclidean disc D(c, R),
// spectrally accurate for integrands smooth on the closed disc.

struct PolarRule {
    complexd center;
    std::vector<double> rho2, wrho2;  // GL in rho^2 on (0, R^2)
    std::vector<double> theta;
};

inline PolarRule disc_rule(complexd center, double radius, int n_radial = 96,
                           int n_angular = 128) {
    PolarRule rule;
    rule.center = center;
    gauss_legendre_ab(n_radial, 0.0, radius * radius, rule.rho2, rule.wrho2);
    rule.theta.resize(n_angular);
    for (int m = 0; m < n_angular; ++m)
        rule.theta[m] = 2.0 * kPi * (m + 0.5) / n_angular;
    return rule;
}

// \int_{D} f dA with f sampled pointwise.
template <typename F>
double disc_integrate_real(const PolarRule& rule, F&& f) {
    const double ang_w = kPi / rule.theta.size();
    double total = 0.0;
    for (size_t j = 0; j < rule.rho2.size(); ++j) {
        const double rho = std::sqrt(rule.rho2[j]);
        double ring = 0.0;
        for (double th : rule.theta)
            ring += f(rule.center + std::polar(rho, th));
        total += rule.wrho2[j] * ring;
    }
    return ang_w * total;
}

// ---------------------------------------------------------------------------
// Per-cell product Gauss-Legendre for non-polynomial integrands over masks.

template <typename F>
double cell_integrate_real(const QuadratureGrid& grid,
                           const std::vector<std::uint8_t>& mask, F&& f,
                           Weight weight, const AlphaParam& alpha,
                           int k = 5) {
    if (static_cast<int>(mask.size()) != grid.cell_count())
        throw std::invalid_argument("cell_integrate: mask/grid mismatch");
    std::vector<double> gx, gw;
    gauss_legendre(k, gx, gw);  // on (-1,1)
    const double dth = grid.cell_dtheta();
    double total = 0.0;
    for (int ring = 0; ring < grid.n_radial(); ++ring) {
        const double ta = grid.cell_t_lo(ring), tb = grid.cell_t_hi(ring);
        const double tm = 0.5 * (ta + tb), th_half = 0.5 * (tb - ta);
        for (int sec = 0; sec < grid.angular_count(); ++sec) {
            if (!mask[grid.cell_index(ring, sec)]) continue;
            const double th0 = sec * dth, thm = th0 + 0.5 * dth;
            double cell = 0.0;
            for (int a = 0; a < k; ++a) {
                const double t = tm + th_half * gx[a];
                const double wf = weight_factor(weight, t, alpha);
                const double rho = std::sqrt(t);
                double arc = 0.0;
                for (int b = 0; b < k; ++b) {
                    const double th = thm + 0.5 * dth * gx[b];
                    arc += gw[b] * f(std::polar(rho, th));
                }
                cell += gw[a] * wf * arc;
            }
            total += cell * th_half * (0.5 * dth) * 0.5;
        }
    }
    return total;
}

}  // namespace hypconc
