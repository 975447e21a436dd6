// specfun.hpp -- log-Gamma, regularized incomplete Beta/Gamma, basis
// constants c_n of the weighted disk spaces, and the Gautschi sandwich
// for the ratio (alpha+1) c_n / pi.

#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace hypconc {

inline constexpr double kPi = 3.14159265358979323846264338327950288;

// Weight exponent alpha > -1.  alpha+1 is kept explicitly: near the
// Hardy end every formula is expressed through it and recomputing
// 1 + alpha would lose the last digits exactly where they matter.
class AlphaParam {
  public:
    explicit AlphaParam(double alpha)
        : alpha_(alpha), alpha_p1_(alpha + 1.0) {
        if (!std::isfinite(alpha) || alpha <= -1.0)
            throw std::domain_error("AlphaParam: require alpha > -1, got " +
                                    std::to_string(alpha));
    }
    // For alpha = -1 + eps with eps known exactly.
    static AlphaParam from_alpha_plus_1(double ap1) {
        if (!(ap1 > 0.0) || !std::isfinite(ap1))
            throw std::domain_error("AlphaParam: require alpha+1 > 0");
        AlphaParam a(ap1 > 0.5 ? ap1 - 1.0 : -0.5);  // placeholder, fixed below
        a.alpha_ = ap1 - 1.0;
        a.alpha_p1_ = ap1;
        return a;
    }
    double value() const { return alpha_; }
    double p1() const { return alpha_p1_; }  // alpha + 1, full precision
    double p2() const { return alpha_p1_ + 1.0; }

  private:
    double alpha_;
    double alpha_p1_;
};

// ln Gamma(x), x > 0.  glibc's lgamma is certified well below the 1e-13
// relative error we need on (0, 1e6); the sign is fixed for x > 0.
inline double ln_gamma(double x) {
    if (!std::isfinite(x) || x <= 0.0)
        throw std::domain_error("ln_gamma: require finite x > 0");
    return std::lgamma(x);
}

namespace detail {

// Continued fraction for the incomplete Beta (Lentz's method).
inline double beta_cf(double x, double a, double b) {
    constexpr int kMaxIter = 500;
    constexpr double kEps = 1e-16;
    constexpr double kTiny = 1e-300;
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) return h;
    }
    throw std::runtime_error("beta_cf: no convergence (a=" + std::to_string(a) +
                             ", b=" + std::to_string(b) + ")");
}

}  // namespace detail

// Regularized incomplete Beta I_x(a,b).  Continued fraction with the
// symmetry switch at x > (a+1)/(a+b+2); stable for a, b in (1e-8, 1e4).
inline double reg_inc_beta(double x, double a, double b) {
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
        throw std::domain_error("reg_inc_beta: require a > 0, b > 0");
    if (!(x >= 0.0) || !(x <= 1.0))
        throw std::domain_error("reg_inc_beta: require x in [0,1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double ln_front = ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0))
        return front * detail::beta_cf(x, a, b) / a;
    return 1.0 - front * detail::beta_cf(1.0 - x, b, a) / b;
}

// Regularized lower incomplete Gamma P(a,x) = gamma(a,x)/Gamma(a).
inline double reg_inc_gamma_p(double a, double x) {
    if (!(a > 0.0) || !(x >= 0.0))
        throw std::domain_error("reg_inc_gamma_p: require a > 0, x >= 0");
    if (x == 0.0) return 0.0;
    const double lng = ln_gamma(a);
    if (x < a + 1.0) {  // series
        double ap = a, del = 1.0 / a, sum = del;
        for (int n = 0; n < 500; ++n) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::fabs(del) < std::fabs(sum) * 1e-16)
                return sum * std::exp(-x + a * std::log(x) - lng);
        }
        throw std::runtime_error("reg_inc_gamma_p: series stalled");
    }
    // continued fraction for Q, P = 1 - Q
    double b = x + 1.0 - a, c = 1e300, d = 1.0 / b, h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < 1e-300) d = 1e-300;
        c = b + an / c;
        if (std::fabs(c) < 1e-300) c = 1e-300;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16)
            return 1.0 - std::exp(-x + a * std::log(x) - lng) * h;
    }
    throw std::runtime_error("reg_inc_gamma_p: cf stalled");
}

// ln c_n where c_n = pi Gamma(alpha+1) Gamma(n+1) / Gamma(alpha+n+2).
inline double log_basis_norm_c(int n, const AlphaParam& alpha) {
    if (n < 0) throw std::domain_error("basis_norm_c: require n >= 0");
    return std::log(kPi) + ln_gamma(alpha.p1()) + ln_gamma(double(n) + 1.0) -
           ln_gamma(alpha.p1() + double(n) + 1.0);
}

// c_n itself.  Routed through logs so nothing overflows for alpha up to
// ~1e5 and n up to ~1e4; extreme parameters may underflow to 0.
inline double basis_norm_c(int n, const AlphaParam& alpha) {
    return std::exp(log_basis_norm_c(n, alpha));
}

struct GautschiBounds {
    double lo;
    double hi;
};

// Two-sided bound on (alpha+1) c_n / pi for alpha in (-1,0):
//   Gamma(alpha+2) (n+alpha+2)^(-alpha-1) <= (alpha+1)c_n/pi
//                                         <= Gamma(alpha+2) (n+alpha+1)^(-alpha-1).
inline GautschiBounds gautschi_bounds(int n, const AlphaParam& alpha) {
    if (n < 0) throw std::domain_error("gautschi_bounds: require n >= 0");
    if (!(alpha.value() > -1.0) || !(alpha.value() < 0.0))
        throw std::domain_error("gautschi_bounds: require alpha in (-1,0)");
    const double g = std::exp(ln_gamma(alpha.p1() + 1.0));
    const double e = -alpha.p1();
    return {g * std::pow(double(n) + alpha.p1() + 1.0, e),
            g * std::pow(double(n) + alpha.p1(), e)};
}

// (alpha+1) c_n / pi evaluated as a single Gamma ratio (no pi round trip).
inline double scaled_basis_norm(int n, const AlphaParam& alpha) {
    return std::exp(ln_gamma(alpha.p1() + 1.0) + ln_gamma(double(n) + 1.0) -
                    ln_gamma(alpha.p1() + double(n) + 1.0));
}

// (1+x)^y with log1p accuracy.
inline double pow1p(double x, double y) { return std::exp(y * std::log1p(x)); }

// expm1((alpha+1) log1p(s/pi)) / (alpha+1), i.e. [(1+s/pi)^(alpha+1)-1]/(alpha+1),
// finite and accurate down to alpha+1 ~ 1e-300.
inline double growth_ratio(const AlphaParam& alpha, double s) {
    const double L = std::log1p(s / kPi);
    const double x = alpha.p1() * L;
    if (std::fabs(x) < 1e-280) return L;
    return std::expm1(x) / alpha.p1();
}

}  // namespace hypconc
