// hyperbolic.hpp -- geometry of the Poincare disk: the measure
// mu = (1-|z|^2)^{-2} dA, pseudohyperbolic discs, Mobius maps, symmetric
// differences, the asymmetry functional, and the Cayley transfer from the
// upper half-plane (nu = y^{-2} dx dy, mu(image) = nu/4).

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "quadrature.hpp"

namespace hypconc {

inline complexd mobius_apply(complexd a, complexd z) {
    if (!(std::abs(a) < 1.0))
        throw std::domain_error("mobius_apply: require |a| < 1");
    return (z - a) / (1.0 - std::conj(a) * z);
}

// Inverse of z -> (z-a)/(1-conj(a)z); maps 0 to a.
inline complexd mobius_unapply(complexd a, complexd z) {
    return (z + a) / (1.0 + std::conj(a) * z);
}

// Radial antiderivative of the hyperbolic measure:
// \int_0^r u (1-u^2)^{-2} du = r^2 / (2 (1-r^2)).
inline double mu_radial(double r) {
    const double t = r * r;
    return 0.5 * t / (1.0 - t);
}

// Disc of prescribed hyperbolic measure.  Both the hyperbolic center and
// the exact Euclidean circle are stored; the pseudohyperbolic radius rho
// satisfies rho^2 = s/(s+pi) independently of the center.
struct AnalyticDisc {
    complexd center;      // hyperbolic center
    double s = 0.0;       // hyperbolic measure
    double rho = 0.0;     // pseudohyperbolic radius
    complexd euclidean_center;
    double euclidean_radius = 0.0;

    bool contains(complexd z) const {
        return std::abs(z - euclidean_center) < euclidean_radius;
    }
};

inline AnalyticDisc pseudo_disc(complexd center, double s) {
    if (!(s > 0.0)) throw std::domain_error("pseudo_disc: require s > 0");
    if (!(std::abs(center) < 1.0))
        throw std::domain_error("pseudo_disc: center must lie in the disk");
    AnalyticDisc d;
    d.center = center;
    d.s = s;
    d.rho = std::sqrt(s / (s + kPi));
    const double a2 = std::norm(center), r2 = d.rho * d.rho;
    const double den = 1.0 - r2 * a2;
    d.euclidean_center = center * ((1.0 - r2) / den);
    d.euclidean_radius = d.rho * (1.0 - a2) / den;
    // Euclidean image stays inside the unit disk: (|x|+rho)/(1+rho|x|) < 1.
    return d;
}

// Reconstruct the disc from its Euclidean circle (must lie inside D).
inline AnalyticDisc disc_from_euclidean(complexd c, double R) {
    if (!(R > 0.0) || !(std::abs(c) + R < 1.0))
        throw std::domain_error("disc_from_euclidean: circle not inside D");
    AnalyticDisc d;
    d.euclidean_center = c;
    d.euclidean_radius = R;
    const double ac = std::abs(c);
    if (ac < 1e-300) {
        d.center = 0.0;
        d.rho = R;
    } else {
        const complexd phase = c / ac;
        const double p = ac - R, q = ac + R;  // diameter endpoints
        const double B = 1.0 + p * q, A = p + q;
        const double disc = B * B - A * A;
        const double x = (B - std::sqrt(std::max(disc, 0.0))) / A;
        d.center = phase * x;
        d.rho = std::abs((q - x) / (1.0 - x * q));
    }
    const double r2 = d.rho * d.rho;
    d.s = kPi * r2 / (1.0 - r2);
    return d;
}

struct GridMask {
    std::shared_ptr<const QuadratureGrid> grid;
    std::vector<std::uint8_t> cells;
};

using HyperbolicSet = std::variant<AnalyticDisc, GridMask>;

struct MeasurePair {
    double euclidean_area = 0.0;
    double hyperbolic_measure = 0.0;
};

inline bool grids_compatible(const QuadratureGrid& a, const QuadratureGrid& b) {
    return a.n_radial() == b.n_radial() &&
           a.angular_count() == b.angular_count() && a.t_max() == b.t_max();
}

inline double mu_measure(const AnalyticDisc& d) { return d.s; }

inline double mu_measure(const GridMask& m) {
    if (!m.grid || m.cells.size() != size_t(m.grid->cell_count()))
        throw std::invalid_argument("mu_measure: mask length != cell count");
    double s = 0.0;
    for (int ring = 0; ring < m.grid->n_radial(); ++ring) {
        const double cm = m.grid->cell_mu(ring);
        for (int sec = 0; sec < m.grid->angular_count(); ++sec)
            if (m.cells[m.grid->cell_index(ring, sec)]) s += cm;
    }
    return s;
}

inline double mu_measure(const HyperbolicSet& S) {
    return std::visit([](const auto& v) { return mu_measure(v); }, S);
}

inline MeasurePair measure_pair(const GridMask& m) {
    MeasurePair p;
    for (int ring = 0; ring < m.grid->n_radial(); ++ring)
        for (int sec = 0; sec < m.grid->angular_count(); ++sec)
            if (m.cells[m.grid->cell_index(ring, sec)]) {
                p.euclidean_area += m.grid->cell_area(ring);
                p.hyperbolic_measure += m.grid->cell_mu(ring);
            }
    return p;
}

inline MeasurePair measure_pair(const AnalyticDisc& d) {
    return {kPi * d.euclidean_radius * d.euclidean_radius, d.s};
}

// Cell-indicator rasterization: a cell belongs to the mask iff its center
// lies in the set.
inline GridMask rasterize(const AnalyticDisc& d,
                          std::shared_ptr<const QuadratureGrid> grid) {
    GridMask m;
    m.grid = grid;
    m.cells.assign(grid->cell_count(), 0);
    for (int ring = 0; ring < grid->n_radial(); ++ring)
        for (int sec = 0; sec < grid->angular_count(); ++sec)
            if (d.contains(grid->cell_center(ring, sec)))
                m.cells[grid->cell_index(ring, sec)] = 1;
    return m;
}

// mu of the d-band of cells straddling the disc boundary; the natural
// resolution scale for rasterized comparisons against analytic sets.
inline double rasterization_tolerance(const AnalyticDisc& d,
                                      const QuadratureGrid& grid) {
    double band = 0.0;
    for (int ring = 0; ring < grid.n_radial(); ++ring) {
        const double ta = grid.cell_t_lo(ring), tb = grid.cell_t_hi(ring);
        for (int sec = 0; sec < grid.angular_count(); ++sec) {
            const double th0 = sec * grid.cell_dtheta();
            const double th1 = th0 + grid.cell_dtheta();
            bool in = false, out = false;
            for (double t : {ta, tb})
                for (double th : {th0, th1})
                    (d.contains(std::polar(std::sqrt(t), th)) ? in : out) =
                        true;
            if (in && out) band += grid.cell_mu(ring);
        }
    }
    return band;
}

// ---------------------------------------------------------------------------
// Exact mu-measure of the intersection of two discs.

namespace detail {

// mu(D(0,rhoA) \cap D_E(c, R)) with c real >= 0 and the second circle
// inside D.  Ray-wise closed form in r, panel Gauss-Legendre in theta with
// panel breaks at the circle-crossing and tangency angles.
inline double mu_centered_cap_euclidean(double rhoA, double c, double R) {
    if (c <= 1e-14) {  // concentric
        const double r = std::min(rhoA, R);
        return 2.0 * kPi * mu_radial(r);
    }
    if (c + R <= rhoA) {  // second disc inside the centered one
        AnalyticDisc b = disc_from_euclidean(c, R);
        return b.s;
    }
    if (c + rhoA <= R) return 2.0 * kPi * mu_radial(rhoA);  // A inside B
    if (c >= rhoA + R) return 0.0;                          // disjoint

    auto ray = [&](double th) -> double {
        const double cs = std::cos(th), sn = std::sin(th);
        const double disc = R * R - c * c * sn * sn;
        if (disc <= 0.0) return 0.0;
        const double root = std::sqrt(disc);
        double lo = c * cs - root, hi = c * cs + root;
        lo = std::max(lo, 0.0);
        hi = std::min(hi, rhoA);
        if (hi <= lo) return 0.0;
        return mu_radial(hi) - mu_radial(lo);
    };

    std::vector<double> breaks = {0.0, kPi};
    const double ccr = (rhoA * rhoA + c * c - R * R) / (2.0 * rhoA * c);
    if (std::fabs(ccr) < 1.0) breaks.push_back(std::acos(ccr));
    if (c > R) breaks.push_back(std::asin(R / c));
    std::sort(breaks.begin(), breaks.end());

    static thread_local std::vector<double> gx, gw;
    if (gx.empty()) gauss_legendre(48, gx, gw);
    double total = 0.0;
    for (size_t i = 0; i + 1 < breaks.size(); ++i) {
        const double a = breaks[i], b = breaks[i + 1];
        if (b - a < 1e-15) continue;
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        double panel = 0.0;
        for (size_t j = 0; j < gx.size(); ++j)
            panel += gw[j] * ray(mid + half * gx[j]);
        total += half * panel;
    }
    return 2.0 * total;  // integrand is even in theta
}

}  // namespace detail

inline double mu_disc_intersection(const AnalyticDisc& A,
                                   const AnalyticDisc& B) {
    // Mobius-translate A to the origin; mu is invariant and pseudohyperbolic
    // discs map to pseudohyperbolic discs of the same measure.
    const complexd xb = mobius_apply(A.center, B.center);
    AnalyticDisc Bc = pseudo_disc(std::abs(xb) < 1e-300 ? complexd(0.0) : xb,
                                  B.s);
    return detail::mu_centered_cap_euclidean(
        A.rho, std::abs(Bc.euclidean_center), Bc.euclidean_radius);
}

inline double symm_diff_measure(const AnalyticDisc& A, const AnalyticDisc& B) {
    return A.s + B.s - 2.0 * mu_disc_intersection(A, B);
}

inline double symm_diff_measure(const GridMask& A, const GridMask& B) {
    if (!grids_compatible(*A.grid, *B.grid))
        throw std::invalid_argument(
            "symm_diff_measure: masks live on different grids; re-rasterize "
            "onto a common grid first");
    double s = 0.0;
    for (int ring = 0; ring < A.grid->n_radial(); ++ring) {
        const double cm = A.grid->cell_mu(ring);
        for (int sec = 0; sec < A.grid->angular_count(); ++sec) {
            const int i = A.grid->cell_index(ring, sec);
            if (A.cells[i] != B.cells[i]) s += cm;
        }
    }
    return s;
}

inline double symm_diff_measure(const HyperbolicSet& A,
                                const HyperbolicSet& B) {
    if (std::holds_alternative<AnalyticDisc>(A) &&
        std::holds_alternative<AnalyticDisc>(B))
        return symm_diff_measure(std::get<AnalyticDisc>(A),
                                 std::get<AnalyticDisc>(B));
    if (std::holds_alternative<GridMask>(A) &&
        std::holds_alternative<GridMask>(B))
        return symm_diff_measure(std::get<GridMask>(A), std::get<GridMask>(B));
    const GridMask& m = std::holds_alternative<GridMask>(A)
                            ? std::get<GridMask>(A)
                            : std::get<GridMask>(B);
    const AnalyticDisc& d = std::holds_alternative<AnalyticDisc>(A)
                                ? std::get<AnalyticDisc>(A)
                                : std::get<AnalyticDisc>(B);
    return symm_diff_measure(m, rasterize(d, m.grid));
}

// ---------------------------------------------------------------------------
// Asymmetry: inf over centers x of mu(S \Delta B(x,r)) / mu(S) with
// mu(B(x,r)) = mu(S).

namespace detail {

// Derivative-free Nelder-Mead on R^2; deterministic.
template <typename F>
std::pair<std::array<double, 2>, double> nelder_mead_2d(
    F&& f, std::array<double, 2> start, double scale, double tol,
    int max_iter = 400) {
    std::array<std::array<double, 2>, 3> p;
    p[0] = start;
    p[1] = {start[0] + scale, start[1]};
    p[2] = {start[0], start[1] + scale};
    std::array<double, 3> fv = {f(p[0]), f(p[1]), f(p[2])};
    for (int it = 0; it < max_iter; ++it) {
        // order: p[0] best, p[2] worst
        std::array<int, 3> idx = {0, 1, 2};
        std::sort(idx.begin(), idx.end(),
                  [&](int a, int b) { return fv[a] < fv[b]; });
        std::array<std::array<double, 2>, 3> ps;
        std::array<double, 3> fs;
        for (int i = 0; i < 3; ++i) {
            ps[i] = p[idx[i]];
            fs[i] = fv[idx[i]];
        }
        p = ps;
        fv = fs;
        const double diam =
            std::max(std::hypot(p[1][0] - p[0][0], p[1][1] - p[0][1]),
                     std::hypot(p[2][0] - p[0][0], p[2][1] - p[0][1]));
        if (diam < tol) break;
        const std::array<double, 2> cen = {0.5 * (p[0][0] + p[1][0]),
                                           0.5 * (p[0][1] + p[1][1])};
        auto lerp = [&](double t) -> std::array<double, 2> {
            return {cen[0] + t * (p[2][0] - cen[0]),
                    cen[1] + t * (p[2][1] - cen[1])};
        };
        const std::array<double, 2> xr = lerp(-1.0);
        const double fr = f(xr);
        if (fr < fv[0]) {
            const std::array<double, 2> xe = lerp(-2.0);
            const double fe = f(xe);
            if (fe < fr) {
                p[2] = xe;
                fv[2] = fe;
            } else {
                p[2] = xr;
                fv[2] = fr;
            }
        } else if (fr < fv[1]) {
            p[2] = xr;
            fv[2] = fr;
        } else {
            const std::array<double, 2> xc = lerp(fr < fv[2] ? -0.5 : 0.5);
            const double fc = f(xc);
            if (fc < std::min(fr, fv[2])) {
                p[2] = xc;
                fv[2] = fc;
            } else {  // shrink
                for (int i = 1; i < 3; ++i) {
                    p[i] = {0.5 * (p[i][0] + p[0][0]),
                            0.5 * (p[i][1] + p[0][1])};
                    fv[i] = f(p[i]);
                }
            }
        }
    }
    int best = 0;
    for (int i = 1; i < 3; ++i)
        if (fv[i] < fv[best]) best = i;
    return {p[best], fv[best]};
}

}  // namespace detail

struct AsymmetryResult {
    double value = 0.0;
    complexd best_center = 0.0;
};

inline AsymmetryResult asymmetry(const HyperbolicSet& S) {
    const double s = mu_measure(S);
    if (!(s > 0.0)) throw std::domain_error("asymmetry: zero-measure set");

    auto objective = [&](complexd x) -> double {
        if (!(std::abs(x) < 0.999)) return 2.0 + std::abs(x);
        return symm_diff_measure(S, HyperbolicSet(pseudo_disc(x, s))) / s;
    };

    // 17x17 coarse scan: pseudohyperbolically spaced radii times angles.
    const double rmax_scan = 0.9, art = std::atanh(rmax_scan);
    complexd best_x = 0.0;
    double best_v = objective(complexd(0.0));
    for (int i = 1; i < 17; ++i) {
        const double r = std::tanh(art * i / 16.0);
        for (int j = 0; j < 17; ++j) {
            const complexd x = std::polar(r, 2.0 * kPi * j / 17.0);
            const double v = objective(x);
            if (v < best_v - 1e-15 ||
                (std::fabs(v - best_v) <= 1e-15 &&
                 std::abs(x) < std::abs(best_x))) {
                best_v = v;
                best_x = x;
            }
        }
    }
    auto obj2 = [&](std::array<double, 2> p) {
        return objective(complexd(p[0], p[1]));
    };
    auto [pt, val] = detail::nelder_mead_2d(
        obj2, {best_x.real(), best_x.imag()}, 0.05, 1e-9);
    if (val > best_v) {  // keep the scan result if refinement stalled
        pt = {best_x.real(), best_x.imag()};
        val = best_v;
    }
    AsymmetryResult res;
    res.value = std::clamp(val, 0.0, 2.0);
    res.best_center = complexd(pt[0], pt[1]);
    return res;
}

// ---------------------------------------------------------------------------
// Cayley transfer C_+ -> D, z |-> (z-i)/(z+i).

inline complexd cayley_to_disc_point(complexd z) {
    return (z - complexd(0.0, 1.0)) / (z + complexd(0.0, 1.0));
}

inline complexd cayley_to_halfplane_point(complexd w) {
    return complexd(0.0, 1.0) * (1.0 + w) / (1.0 - w);
}

// Rectangular cell grid on the upper half-plane; nu(cell) is exact.
struct HalfPlaneMask {
    double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
    int nx = 0, ny = 0;
    std::vector<std::uint8_t> cells;  // row-major in (ix, iy)

    int index(int ix, int iy) const { return iy * nx + ix; }
    double cell_nu(int iy) const {
        const double ya = y0 + (y1 - y0) * iy / ny;
        const double yb = y0 + (y1 - y0) * (iy + 1) / ny;
        return (x1 - x0) / nx * (1.0 / ya - 1.0 / yb);
    }
    bool contains(complexd z) const {
        const double x = z.real(), y = z.imag();
        if (x < x0 || x >= x1 || y < y0 || y >= y1) return false;
        const int ix = int((x - x0) / (x1 - x0) * nx);
        const int iy = int((y - y0) / (y1 - y0) * ny);
        return cells[index(std::min(ix, nx - 1), std::min(iy, ny - 1))] != 0;
    }
};

inline double nu_measure(const HalfPlaneMask& m) {
    if (m.y0 <= 0.0 || m.cells.size() != size_t(m.nx * m.ny))
        throw std::invalid_argument("nu_measure: invalid half-plane mask");
    double s = 0.0;
    for (int iy = 0; iy < m.ny; ++iy) {
        const double cn = m.cell_nu(iy);
        for (int ix = 0; ix < m.nx; ++ix)
            if (m.cells[m.index(ix, iy)]) s += cn;
    }
    return s;
}

// Euclidean disc contained in C_+.
struct HalfPlaneDisc {
    complexd center;
    double radius = 0.0;
};

// Exact image: a circle maps to a circle; recover it from three points.
inline AnalyticDisc cayley_to_disc(const HalfPlaneDisc& d) {
    if (!(d.center.imag() > d.radius))
        throw std::domain_error("cayley_to_disc: disc must lie in C_+");
    const complexd w1 = cayley_to_disc_point(d.center + d.radius);
    const complexd w2 = cayley_to_disc_point(d.center - d.radius);
    const complexd w3 =
        cayley_to_disc_point(d.center + complexd(0.0, d.radius));
    // circumcircle of w1, w2, w3
    const complexd a = w1 - w3, b = w2 - w3;
    const complexd num = a * b * (std::conj(a) - std::conj(b));
    const complexd den = std::conj(a) * b - a * std::conj(b);
    const complexd c = w3 + num / den;
    return disc_from_euclidean(c, std::abs(w1 - c));
}

// Pullback rasterization of a half-plane mask onto a disk cell grid.
inline GridMask cayley_to_disc(const HalfPlaneMask& S,
                               std::shared_ptr<const QuadratureGrid> grid) {
    GridMask m;
    m.grid = grid;
    m.cells.assign(grid->cell_count(), 0);
    for (int ring = 0; ring < grid->n_radial(); ++ring)
        for (int sec = 0; sec < grid->angular_count(); ++sec) {
            const complexd w = grid->cell_center(ring, sec);
            if (S.contains(cayley_to_halfplane_point(w)))
                m.cells[grid->cell_index(ring, sec)] = 1;
        }
    return m;
}

}  // namespace hypconc
