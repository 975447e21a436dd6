// transforms.hpp -- the analytic bridge between the half-plane and the
// disk: Cauchy windows psi_beta (spectral profile t^beta e^{-t}), the
// Bergman transform B_alpha of H^2(C_+) signals, the wavelet transform it
// realizes, and the unitary map T_alpha onto the disk space.
//
// Conventions used throughout (self-consistent, verified by the isometry
// tests): signals are given spectrally with ||f||^2 = int_0^inf |fhat|^2 dt;
// the half-plane Bergman norm is int |g|^2 y^alpha dx dy; then
//   B_a f(z) = c_a int t^{(a+1)/2} fhat(t) e^{izt} dt,
//       c_a = 2^{(a+1)/2} / sqrt(2 pi Gamma(a+1)),
//   T_a g(w) = 2 (1-w)^{-(a+2)} g((w+1)/(i(w-1)))
// are both unitary.

#pragma once

#include "quadrature.hpp"
#include "hyperbolic.hpp"

namespace hypconc {

// Gauss-Laguerre rule with the e^{-t} factor folded into the weights:
// \int_0^inf h(t) dt ~= sum w[i] h(x[i]).  Recurrence evaluated in the
// e^{-x/2}-scaled form so nothing overflows up to a few hundred nodes.
inline void gauss_laguerre(int n, std::vector<double>& x,
                           std::vector<double>& w) {
    if (n < 2) throw std::domain_error("gauss_laguerre: n >= 2");
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    double z = 0.0;
    for (int i = 0; i < n; ++i) {
        if (i == 0)
            z = 3.0 / (1.0 + 2.4 * n);
        else if (i == 1)
            z += 15.0 / (1.0 + 2.5 * n);
        else
            z += ((1.0 + 2.55 * (i - 1)) / (1.9 * (i - 1))) * (z - x[i - 2]);
        double pp = 0.0, p2 = 0.0;
        for (int it = 0; it < 200; ++it) {
            // scaled Laguerre: lk = L_k(z) e^{-z/2}
            double p1 = std::exp(-0.5 * z);
            p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0 - z) * p2 - j * p3) / (j + 1.0);
            }
            pp = n * (p1 - p2) / z;  // d/dz of scaled L_n, up to e-term; see below
            // exact derivative of unscaled: L_n' = n (L_n - L_{n-1}) / z;
            // the common e^{-z/2} factor cancels in the Newton ratio.
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::fabs(z - z1) <= 1e-14 * std::max(1.0, z)) break;
        }
        x[i] = z;
        // w e^{x} = x / ((n+1)^2 [L_{n+1}(x) e^{-x/2}]^2)
        double p1 = std::exp(-0.5 * z), p2w = 0.0;
        for (int j = 0; j < n + 1; ++j) {
            const double p3 = p2w;
            p2w = p1;
            p1 = ((2.0 * j + 1.0 - z) * p2w - j * p3) / (j + 1.0);
        }
        w[i] = z / (double(n + 1) * (n + 1) * p1 * p1);
    }
}

// Positive-frequency spectral samples with quadrature weights for
// \int_0^inf dt.
struct HalfPlaneSignal {
    double beta = 0.5;
    std::vector<double> t;
    std::vector<complexd> fhat;
    std::vector<double> w;

    double norm2() const {
        double s = 0.0;
        for (size_t i = 0; i < t.size(); ++i) s += w[i] * std::norm(fhat[i]);
        return s;
    }
};

template <typename F>
HalfPlaneSignal make_signal(double beta, F&& spectral, int n_nodes = 128) {
    HalfPlaneSignal sig;
    sig.beta = beta;
    gauss_laguerre(n_nodes, sig.t, sig.w);
    sig.fhat.resize(sig.t.size());
    for (size_t i = 0; i < sig.t.size(); ++i) sig.fhat[i] = spectral(sig.t[i]);
    return sig;
}

// Normalization constant of the Cauchy window:
// c_beta^2 = int_0^inf t^{2 beta - 1} e^{-2t} dt = Gamma(2 beta) / 4^beta.
inline double cauchy_window_norm_const(double beta) {
    if (!(beta > 0.0))
        throw std::domain_error("cauchy_window: require beta > 0");
    return std::exp(0.5 * ln_gamma(2.0 * beta) - beta * std::log(2.0));
}

// psi_beta-hat(t) = (1/c_beta) t^beta e^{-t} on t >= 0, zero otherwise;
// the constant makes int |psi-hat|^2 t^{-1} dt = 1.
inline double cauchy_window_hat(double beta, double t) {
    if (t < 0.0) return 0.0;
    return std::pow(t, beta) * std::exp(-t) / cauchy_window_norm_const(beta);
}

inline double bergman_transform_const(const AlphaParam& alpha) {
    return std::exp(0.5 * alpha.p1() * std::log(2.0) -
                    0.5 * (std::log(2.0 * kPi) + ln_gamma(alpha.p1())));
}

// B_alpha f(z), Im z > 0.
inline complexd bergman_transform(const HalfPlaneSignal& f,
                                  const AlphaParam& alpha, complexd z) {
    if (!(z.imag() > 0.0))
        throw std::domain_error("bergman_transform: require Im z > 0");
    const double p = 0.5 * alpha.p1();
    complexd acc = 0.0;
    for (size_t i = 0; i < f.t.size(); ++i)
        acc += f.w[i] * std::pow(f.t[i], p) * f.fhat[i] *
               std::exp(complexd(0.0, 1.0) * z * f.t[i]);
    return bergman_transform_const(alpha) * acc;
}

// Wavelet transform with the Cauchy window of order beta, realized
// through the Bergman transform of order alpha = 2 beta - 1:
//   W f(x,y) = y^{alpha/2 + 1} B_alpha f(-x + i y).
inline complexd wavelet_transform_point(const HalfPlaneSignal& f, double beta,
                                        double x, double y) {
    if (!(y > 0.0))
        throw std::domain_error("wavelet_transform_point: require y > 0");
    const AlphaParam alpha(2.0 * beta - 1.0);
    return std::pow(y, 0.5 * alpha.value() + 1.0) *
           bergman_transform(f, alpha, complexd(-x, y));
}

// T_alpha: half-plane Bergman function -> disk Bergman function (unitary).
template <typename G>
complexd t_alpha_apply(G&& g, const AlphaParam& alpha, complexd w) {
    if (!(std::abs(w) < 1.0))
        throw std::domain_error("t_alpha_apply: require |w| < 1");
    const complexd z = (w + 1.0) / (complexd(0.0, 1.0) * (w - 1.0));
    return 2.0 * std::pow(1.0 - w, -(alpha.p1() + 1.0)) * g(z);
}

// The composite C_+ signal -> disk-space function, evaluable pointwise.
class DiskImage {
  public:
    DiskImage(HalfPlaneSignal sig, AlphaParam alpha)
        : sig_(std::move(sig)), alpha_(alpha) {}
    complexd operator()(complexd w) const {
        return t_alpha_apply(
            [&](complexd z) { return bergman_transform(sig_, alpha_, z); },
            alpha_, w);
    }
    const AlphaParam& alpha() const { return alpha_; }
    double signal_norm2() const { return sig_.norm2(); }

  private:
    HalfPlaneSignal sig_;
    AlphaParam alpha_;
};

// Hyperbolic ball in C_+ around z0 with nu-measure V: the Cayley
// preimage of the disk pseudo-disc of measure V/4.
inline HalfPlaneDisc halfplane_pseudo_disc(complexd z0, double nu_measure) {
    if (!(z0.imag() > 0.0))
        throw std::domain_error("halfplane_pseudo_disc: require Im z0 > 0");
    const AnalyticDisc d =
        pseudo_disc(cayley_to_disc_point(z0), nu_measure / 4.0);
    // map the disk circle back through three points
    const complexd w1 = d.euclidean_center + d.euclidean_radius;
    const complexd w2 = d.euclidean_center - d.euclidean_radius;
    const complexd w3 =
        d.euclidean_center + complexd(0.0, 1.0) * d.euclidean_radius;
    const complexd z1 = cayley_to_halfplane_point(w1);
    const complexd z2 = cayley_to_halfplane_point(w2);
    const complexd z3 = cayley_to_halfplane_point(w3);
    const complexd a = z1 - z3, b = z2 - z3;
    const complexd num = a * b * (std::conj(a) - std::conj(b));
    const complexd den = std::conj(a) * b - a * std::conj(b);
    const complexd c = z3 + num / den;
    return {c, std::abs(z1 - c)};
}

// nu-measure of a Euclidean disc in C_+ (panel quadrature; the integrand
// y^{-2} is smooth on the closed disc).
inline double nu_measure(const HalfPlaneDisc& d) {
    if (!(d.center.imag() > d.radius))
        throw std::domain_error("nu_measure: disc must lie in C_+");
    const PolarRule rule = disc_rule(d.center, d.radius);
    return disc_integrate_real(rule, [](complexd z) {
        return 1.0 / (z.imag() * z.imag());
    });
}

}  // namespace hypconc
