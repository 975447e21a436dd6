// asymptotics.hpp -- sharpness machinery: the two-mode family
// f_eps = e_0 + eps e_2, its closed-form deficit on the matched centered
// disc, the second-variation coefficients W_k(s), the uniform negativity
// bound, and the admissible-shrink threshold (alpha+2)^{-1/(alpha+1)}.

#pragma once

#include "concentration.hpp"

namespace hypconc {

// Coefficients (1, 0, eps) in the normalized basis.
inline BergmanFunction make_sharpness(const AlphaParam& alpha, double eps) {
    if (!(eps >= 0.0)) throw std::domain_error("make_sharpness: eps >= 0");
    return BergmanFunction(alpha, {1.0, 0.0, eps});
}

struct MomentIntegrals {
    double I1 = 0.0;  // \int_B (1-|z|^2)^alpha dA
    double I2 = 0.0;  // \int_B |z|^4 (1-|z|^2)^alpha dA
};

namespace detail {

// (1 - (1+s/pi)^{-p}) / p, stable in p near 0.
inline double theta_aux(double p, double s) {
    const double x = p * std::log1p(s / kPi);
    if (std::fabs(x) < 1e-280) return std::log1p(s / kPi);
    return -std::expm1(-x) / p;
}

}  // namespace detail

inline MomentIntegrals moment_integrals(const AlphaParam& alpha, double s) {
    if (!(s > 0.0)) throw std::domain_error("moment_integrals: require s > 0");
    MomentIntegrals m;
    const double A1 = detail::theta_aux(alpha.p1(), s);
    const double A2 = detail::theta_aux(alpha.p1() + 1.0, s);
    const double A3 = detail::theta_aux(alpha.p1() + 2.0, s);
    m.I1 = kPi * A1;
    m.I2 = kPi * (A1 - 2.0 * A2 + A3);
    return m;
}

// The deficit of e_0 + eps e_2 on the matched centered disc factors as
// eps^2/(1+eps^2) c_alpha(s) with
//   c_alpha(s) = 1 - (alpha+2)(alpha+3) (A1 - 2 A2 + A3) / (2 A1),
//   A_j = (1 - (1+s/pi)^{-(alpha+j)})/(alpha+j).
inline double c_alpha_s(const AlphaParam& alpha, double s) {
    const double A1 = detail::theta_aux(alpha.p1(), s);
    const double A2 = detail::theta_aux(alpha.p1() + 1.0, s);
    const double A3 = detail::theta_aux(alpha.p1() + 2.0, s);
    return 1.0 -
           (alpha.p1() + 1.0) * (alpha.p1() + 2.0) * (A1 - 2.0 * A2 + A3) /
               (2.0 * A1);
}

inline double sharpness_deficit_closed(const AlphaParam& alpha, double s,
                                       double eps) {
    if (!(eps >= 0.0))
        throw std::domain_error("sharpness_deficit_closed: eps >= 0");
    return eps * eps / (1.0 + eps * eps) * c_alpha_s(alpha, s);
}

// Hardy-end limit of c_alpha(s); agrees with the limit of the Hardy
// deficit of the family 1 + eps z^2: s (3s + 2 pi) / (2 (s+pi)^2 log(1+s/pi)).
inline double c_alpha_hardy_limit(double s) {
    const double L = std::log1p(s / kPi);
    return s * (3.0 * s + 2.0 * kPi) / (2.0 * (s + kPi) * (s + kPi) * L);
}

// Reference curve c(s) = s^2 / (2 pi (s+pi)^2 log(1+s/pi)); one interior
// maximum, below 0.1 everywhere.
inline double c_limit(double s) {
    if (!(s > 0.0)) throw std::domain_error("c_limit: require s > 0");
    const double L = std::log1p(s / kPi);
    return s * s / (2.0 * kPi * (s + kPi) * (s + kPi) * L);
}

// Second-variation coefficient
//   W_k(s) = I_{r^2}(k+1, alpha+1) - theta_alpha(s)
//            + pi/((alpha+2) c_k) (1+s/pi)^{-(alpha+1)} (s/(s+pi))^k,
// r^2 = s/(s+pi).
inline double second_variation_W(const AlphaParam& alpha, double s, int k) {
    if (k < 2) throw std::domain_error("second_variation_W: require k >= 2");
    if (!(s > 0.0)) throw std::domain_error("second_variation_W: s > 0");
    const double r2 = s / (s + kPi);
    const double t1 = reg_inc_beta(r2, double(k) + 1.0, alpha.p1());
    const double t2 = theta(alpha, s);
    const double log_t3 = std::log(kPi) - std::log(alpha.p1() + 1.0) -
                          log_basis_norm_c(k, alpha) -
                          alpha.p1() * std::log1p(s / kPi) +
                          k * std::log(r2);
    return t1 - t2 + std::exp(log_t3);
}

// Closed form of W_2: -(alpha+1)/2 s (s+2 pi) (s+pi)^{-2} (1+s/pi)^{-(alpha+1)}.
inline double w2_closed(const AlphaParam& alpha, double s) {
    return -0.5 * alpha.p1() * s * (s + 2.0 * kPi) / ((s + kPi) * (s + kPi)) *
           pow1p(s / kPi, -alpha.p1());
}

// The printed uniform-negativity constant; differs from w2_closed by the
// factor pi/(alpha+1).  Both are reported; w2_closed is the quadrature-
// certified one and the one the equality case g = e_2 attains.
inline double negdef_bound_prop(const AlphaParam& alpha, double s) {
    return w2_closed(alpha, s) * kPi / alpha.p1();
}

// Minimal admissible shrink factor in the fake-constant family:
// (alpha+2)^{-1/(alpha+1)}, stable near alpha = -1.
inline double sigma_threshold(const AlphaParam& alpha) {
    return std::exp(-std::log(alpha.p1() + 1.0) / alpha.p1());
}

// K_alpha[f] = I_f(s) / ||f||^2 where I_f(s) integrates u over its own
// super-level set of measure s; evaluated through the layer cake
//   I_f(s) = s u*(s) + \int_{u*(s)}^{T} rho(t) dt.
inline double concentration_functional(const BergmanFunction& f, double s) {
    DensityProfile prof(f);
    const double t = prof.u_star(s);
    return s * t + prof.rho_integral(t, prof.max_u());
}

}  // namespace hypconc
