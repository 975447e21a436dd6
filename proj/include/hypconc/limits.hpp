// limits.hpp -- the two endpoint regimes.  Fock: Euclidean-plane sets
// rescaled by sqrt(pi/alpha), the measure s_alpha, and the transfer of
// concentration toward 1 - e^{-|Omega|}.  Hardy: boundary-norm functions
// as coefficient sequences, the kernel g_omega, the deficit against
// pi log(1+s/pi), and the stable evaluations of the alpha -> -1 constants.

#pragma once

#include "concentration.hpp"

namespace hypconc {

// ---------------------------------------------------------------------------
// Fock side.

// Entire function sum_k b_k sqrt(pi^k/k!) z^k; ||F||^2 = sum |b_k|^2.
struct FockFunction {
    std::vector<complexd> coeffs;

    double norm2() const {
        double s = 0.0;
        for (const auto& c : coeffs) s += std::norm(c);
        return s;
    }
    complexd evaluate(complexd z) const {
        complexd acc = 0.0;
        for (size_t k = coeffs.size(); k-- > 0;)
            acc = acc * z +
                  coeffs[k] * std::exp(0.5 * (k * std::log(kPi) -
                                              ln_gamma(double(k) + 1.0)));
        return acc;
    }
};

// Ground state shifted to z0: |F|^2 e^{-pi |z|^2} = e^{-pi |z - z0|^2}.
inline FockFunction fock_ground_state(complexd z0, int N = 48) {
    FockFunction F;
    F.coeffs.resize(size_t(N) + 1);
    const complexd base = std::sqrt(kPi) * std::conj(z0);
    const double front = std::exp(-0.5 * kPi * std::norm(z0));
    complexd pw = 1.0;
    for (int k = 0; k <= N; ++k) {
        F.coeffs[k] = front * pw * std::exp(-0.5 * ln_gamma(double(k) + 1.0));
        pw *= base;
    }
    return F;
}

// Euclidean disc in the plane.
struct PlaneDisc {
    complexd center;
    double radius = 0.0;
    double area() const { return kPi * radius * radius; }
};

// \int_Omega |F|^2 e^{-pi |z|^2} dz over a disc, disc-adapted quadrature.
inline double fock_weighted_integral(const FockFunction& F,
                                     const PlaneDisc& d) {
    const PolarRule rule = disc_rule(d.center, d.radius, 96, 160);
    return disc_integrate_real(rule, [&](complexd z) {
        return std::norm(F.evaluate(z)) * std::exp(-kPi * std::norm(z));
    });
}

// Centered-disc closed form: sum |b_k|^2 P(k+1, pi R^2).
inline double fock_weighted_integral_centered(const FockFunction& F,
                                              double radius) {
    double s = 0.0;
    for (size_t k = 0; k < F.coeffs.size(); ++k)
        s += std::norm(F.coeffs[k]) *
             reg_inc_gamma_p(double(k) + 1.0, kPi * radius * radius);
    return s;
}

inline double fock_deficit(const FockFunction& F, const PlaneDisc& Omega) {
    const double A = Omega.area();
    if (!(A > 0.0)) throw std::domain_error("fock_deficit: |Omega| > 0");
    const double conc = fock_weighted_integral(F, Omega);
    return 1.0 - conc / (-std::expm1(-A) * F.norm2());
}

// Moments \int_Omega |z|^{2(k-1)} dz of a plane set, supplied as a
// callback, feed the rescaled-measure series
//   s_alpha = sum_{k>=1} k (pi/alpha)^k M_{k-1},
// truncated at relative tail 1e-12.
template <typename Moments>
double rescaled_set_measure_series(Moments&& M, double alpha) {
    if (!(alpha > 0.0))
        throw std::domain_error("rescaled_set_measure: require alpha > 0");
    double s = 0.0;
    double q = kPi / alpha;
    double qk = q;
    for (int k = 1; k <= 100000; ++k) {
        const double term = k * qk * M(k - 1);
        s += term;
        if (!(std::isfinite(term)))
            throw std::domain_error(
                "rescaled_set_measure: series diverges (set escapes the "
                "disk after rescaling)");
        if (term < 1e-12 * std::max(s, 1e-300) && k > 4) break;
        qk *= q;
    }
    return s;
}

inline double rescaled_set_measure(const PlaneDisc& d, double alpha) {
    if (!(d.radius > 0.0))
        throw std::domain_error("rescaled_set_measure: |Omega| > 0");
    const double reach = std::abs(d.center) + d.radius;
    if (!(kPi / alpha * reach * reach < 1.0))
        throw std::domain_error(
            "rescaled_set_measure: rescaled set escapes the disk");
    if (std::abs(d.center) < 1e-14) {
        const double R2 = d.radius * d.radius;
        return rescaled_set_measure_series(
            [&](int j) { return kPi * std::pow(R2, j + 1) / (j + 1); },
            alpha);
    }
    // generic disc: polar-rule moments
    const PolarRule rule = disc_rule(d.center, d.radius, 64, 96);
    return rescaled_set_measure_series(
        [&](int j) {
            return disc_integrate_real(rule, [&](complexd z) {
                return std::pow(std::norm(z), j);
            });
        },
        alpha);
}

struct FockLimitRow {
    double alpha = 0.0;
    double s_alpha = 0.0;
    double value = 0.0;   // disk-side concentration of the embedded function
    double target = 0.0;  // Fock-side concentration
    double gap = 0.0;
};

// Embed the Fock coefficients as a disk function (same coefficient vector
// in the normalized monomial basis) and track the concentration on the
// rescaled centered disc along the alpha schedule.
inline std::vector<FockLimitRow> fock_limit_experiment(
    const FockFunction& F, double area, const std::vector<double>& alphas) {
    if (!(area > 0.0))
        throw std::domain_error("fock_limit_experiment: area > 0");
    std::vector<FockLimitRow> rows;
    const double R = std::sqrt(area / kPi);
    const double target =
        fock_weighted_integral_centered(F, R) / F.norm2();
    for (double a : alphas) {
        const AlphaParam alpha(a);
        FockLimitRow row;
        row.alpha = a;
        row.s_alpha = rescaled_set_measure(PlaneDisc{0.0, R}, a);
        const double t_a = row.s_alpha / (row.s_alpha + kPi);  // radius^2
        double conc = 0.0, n2 = 0.0;
        for (size_t k = 0; k < F.coeffs.size(); ++k) {
            const double w = std::norm(F.coeffs[k]);
            conc += w * reg_inc_beta(t_a, double(k) + 1.0, alpha.p1());
            n2 += w;
        }
        row.value = conc / n2;
        row.target = target;
        row.gap = std::fabs(row.value - target);
        rows.push_back(row);
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Hardy side.

struct HardyFunction {
    std::vector<complexd> coeffs;  // basis z^k

    double norm2() const {
        double s = 0.0;
        for (const auto& c : coeffs) s += std::norm(c);
        return s;
    }
    complexd evaluate(complexd z) const {
        complexd acc = 0.0;
        for (size_t k = coeffs.size(); k-- > 0;) acc = acc * z + coeffs[k];
        return acc;
    }
};

inline double hardy_norm(const HardyFunction& f) { return std::sqrt(f.norm2()); }

inline HardyFunction hardy_kernel(complexd omega, int N = 256) {
    if (!(std::abs(omega) < 1.0))
        throw std::domain_error("hardy_kernel: require |omega| < 1");
    HardyFunction g;
    g.coeffs.resize(size_t(N) + 1);
    const double front = std::sqrt(1.0 - std::norm(omega));
    complexd pw = 1.0;
    for (int k = 0; k <= N; ++k) {
        g.coeffs[k] = front * pw;
        pw *= std::conj(omega);
    }
    return g;
}

inline complexd hardy_inner(const HardyFunction& f, const HardyFunction& g) {
    const size_t n = std::min(f.coeffs.size(), g.coeffs.size());
    complexd s = 0.0;
    for (size_t k = 0; k < n; ++k)
        s += f.coeffs[k] * std::conj(g.coeffs[k]);
    return s;
}

// \int_B |f|^2 (1-|z|^2)^{-1} dA over the centered disc with t = r^2:
// per mode pi J_k(t), J_k(t) = -log(1-t) - sum_{j=1}^k t^j / j.
inline double hardy_disc_integral_centered(const HardyFunction& f, double t) {
    double acc = 0.0;
    for (size_t k = 0; k < f.coeffs.size(); ++k) {
        double J = -std::log1p(-t);
        double tj = 1.0;
        for (size_t j = 1; j <= k; ++j) {
            tj *= t;
            J -= tj / double(j);
        }
        acc += std::norm(f.coeffs[k]) * J;
    }
    return kPi * acc;
}

inline double hardy_deficit(const HardyFunction& f, const HyperbolicSet& S) {
    const double n2 = f.norm2();
    if (!(n2 > 0.0)) throw std::domain_error("hardy_deficit: ||f|| = 0");
    const double s = mu_measure(S);
    if (!(s > 0.0)) throw std::domain_error("hardy_deficit: mu(Omega) = 0");
    double integral = 0.0;
    if (std::holds_alternative<AnalyticDisc>(S)) {
        const auto& d = std::get<AnalyticDisc>(S);
        if (std::abs(d.euclidean_center) < 1e-14) {
            integral = hardy_disc_integral_centered(f, d.rho * d.rho);
        } else {
            const PolarRule rule =
                disc_rule(d.euclidean_center, d.euclidean_radius, 96, 192);
            integral = disc_integrate_real(rule, [&](complexd z) {
                return std::norm(f.evaluate(z)) / (1.0 - std::norm(z));
            });
        }
    } else {
        const GridMask& m = std::get<GridMask>(S);
        integral = cell_integrate_real(
            *m.grid, m.cells,
            [&](complexd z) {
                return std::norm(f.evaluate(z)) / (1.0 - std::norm(z));
            },
            Weight::plain, AlphaParam(0.0), 5);
    }
    return 1.0 - integral / (kPi * std::log1p(s / kPi) * n2);
}

struct HardyLimitRow {
    double alpha = 0.0;
    double s = 0.0;
    double theta_ratio = 0.0;      // theta_alpha(s)/(alpha+1)
    double theta_ratio_limit = 0.0;  // log(1+s/pi)
    double constant = 0.0;         // 1 + (alpha+2)/(alpha+1)[(1+s/pi)^{a+1}-1]
    double constant_limit = 0.0;   // 1 + log(1+s/pi)
    double coeff_ratio = 0.0;      // (alpha+1) c_5 / pi
    bool gautschi_ok = true;       // sandwich for n <= 100 (alpha in (-1,0))
};

inline std::vector<HardyLimitRow> hardy_limit_experiment(
    const std::vector<double>& s_grid, const std::vector<double>& alphas) {
    std::vector<HardyLimitRow> rows;
    for (double a : alphas) {
        const AlphaParam alpha(a);
        for (double s : s_grid) {
            HardyLimitRow row;
            row.alpha = a;
            row.s = s;
            row.theta_ratio = theta_over_alpha_p1(alpha, s);
            row.theta_ratio_limit = std::log1p(s / kPi);
            row.constant = 1.0 + (alpha.p1() + 1.0) * growth_ratio(alpha, s);
            row.constant_limit = 1.0 + std::log1p(s / kPi);
            row.coeff_ratio = scaled_basis_norm(5, alpha);
            if (alpha.value() > -1.0 && alpha.value() < 0.0) {
                for (int n = 0; n <= 100 && row.gautschi_ok; ++n) {
                    const GautschiBounds gb = gautschi_bounds(n, alpha);
                    const double v = scaled_basis_norm(n, alpha);
                    if (!(gb.lo <= v * (1.0 + 1e-12) &&
                          v <= gb.hi * (1.0 + 1e-12)))
                        row.gautschi_ok = false;
                }
            }
            rows.push_back(row);
        }
    }
    return rows;
}

// N(s) = C ( s^{-1} (1+s/pi)^2 + log^{1/2}(1+s/pi) (1+s/pi) ).
inline double hardy_N_s(double s, double C) {
    if (!(s > 0.0) || !(C > 0.0))
        throw std::domain_error("hardy_N_s: require s > 0, C > 0");
    const double L = std::log1p(s / kPi);
    const double q = 1.0 + s / kPi;
    return C * (q * q / s + std::sqrt(L) * q);
}

}  // namespace hypconc
