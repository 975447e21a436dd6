// Shared test oracles: adaptive 1-D quadrature, a pinned normal generator,
// and small helpers.  Everything here is independent of the library paths
// it is used to check.

#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

namespace testutil {

// Adaptive Simpson on (a,b).
inline double adaptive_simpson_rec(const std::function<double(double)>& f,
                                   double a, double b, double fa, double fm,
                                   double fb, double whole, double tol,
                                   int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, tol / 2.0,
                                depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, tol / 2.0,
                                depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a,
                        double b, double tol = 1e-13) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

// Same Box-Muller construction the CLI pins down.
class NormalGen {
  public:
    explicit NormalGen(std::uint64_t seed) : rng_(seed) {}
    double operator()() {
        if (have_) {
            have_ = false;
            return cached_;
        }
        double u1 = 0.0;
        while (u1 <= 1e-300) u1 = (rng_() >> 11) * 0x1.0p-53;
        const double u2 = (rng_() >> 11) * 0x1.0p-53;
        const double r = std::sqrt(-2.0 * std::log(u1));
        cached_ = r * std::sin(2.0 * 3.14159265358979323846 * u2);
        have_ = true;
        return r * std::cos(2.0 * 3.14159265358979323846 * u2);
    }

  private:
    std::mt19937_64 rng_;
    bool have_ = false;
    double cached_ = 0.0;
};

inline std::vector<std::complex<double>> random_coeffs(int degree,
                                                       std::uint64_t seed) {
    NormalGen gen(seed);
    std::vector<std::complex<double>> c(size_t(degree) + 1);
    for (auto& x : c) {
        const double re = gen(), im = gen();
        x = {re, im};
    }
    return c;
}

// Golden-section maximizer on [a,b] for unimodal f.
inline double golden_max(const std::function<double(double)>& f, double a,
                         double b, double tol = 1e-12) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace testutil
