// stability.hpp -- quantitative stability machinery: overlap with the
// extremal manifold, distance identities, the quantitative RKHS lemma,
// the growth constants M_alpha(s) and K(s,alpha), the super-level-set
// estimate, the rearrangement gap, enclosure radii for near-extremal
// level sets, and a numeric audit of the checkable proof inequalities.
//
// Absolute constants the theory only asserts to exist (the C of the
// super-level estimate, of the rearrangement gap, of M and K) enter as
// explicit probe parameters; sweeps report the minimal admissible values
// instead of asserting any particular number.

#pragma once

#include <sstream>

#include "concentration.hpp"

namespace hypconc {

// ---------------------------------------------------------------------------
// Extremal overlap and distance.

struct OverlapResult {
    double a0_sq = 0.0;      // sup_w |<f, f_w>|^2 for unit f
    complexd best_omega = 0.0;
};

namespace detail {

inline std::pair<double, complexd> peak_density(const BergmanFunction& f) {
    double best = 0.0;
    complexd bz = 0.0;
    for (int i = 0; i < 64; ++i) {
        const double r = 0.995 * i / 63.0;
        for (int j = 0; j < 64; ++j) {
            const complexd z = std::polar(r, 2.0 * kPi * j / 64.0);
            const double v = u_density(f, z);
            if (v > best) {
                best = v;
                bz = z;
            }
        }
    }
    auto neg = [&](std::array<double, 2> p) {
        const complexd z(p[0], p[1]);
        if (!(std::abs(z) < 0.9999)) return 1.0;
        return -u_density(f, z);
    };
    auto [pt, val] =
        nelder_mead_2d(neg, {bz.real(), bz.imag()}, 0.01, 1e-12);
    if (-val > best) return {-val, complexd(pt[0], pt[1])};
    return {best, bz};
}

}  // namespace detail

// sup_w |<f, f_w>|^2 = (pi/(alpha+1)) max u for unit-norm f.
inline OverlapResult extremal_overlap(const BergmanFunction& f) {
    const BergmanFunction g = f.normalized();
    auto [T, peak] = detail::peak_density(g);
    OverlapResult res;
    res.a0_sq = std::min(1.0, kPi / g.alpha().p1() * T);
    res.best_omega = peak;
    return res;
}

// inf over (|c| = ||f||, w) of ||f - c f_w|| / ||f|| = sqrt(2 (1 - a0)).
inline double distance_to_extremals(const BergmanFunction& f) {
    const OverlapResult ov = extremal_overlap(f);
    return std::sqrt(std::max(0.0, 2.0 * (1.0 - std::sqrt(ov.a0_sq))));
}

// Independent route: minimize over an omega grid + refinement using the
// coefficient inner products against truncated kernels.
inline double distance_to_extremals_bruteforce(const BergmanFunction& f) {
    const BergmanFunction g = f.normalized();
    auto overlap = [&](complexd w) -> double {
        if (!(std::abs(w) < 0.9999)) return 0.0;
        return std::abs(inner(g, kernel_function(g.alpha(), w,
                                                 std::max(64, 2 * g.degree()))));
    };
    double best = overlap(0.0);
    complexd bw = 0.0;
    for (int i = 1; i < 33; ++i) {
        const double r = 0.97 * i / 32.0;
        for (int j = 0; j < 33; ++j) {
            const complexd w = std::polar(r, 2.0 * kPi * j / 33.0);
            const double v = overlap(w);
            if (v > best) {
                best = v;
                bw = w;
            }
        }
    }
    auto neg = [&](std::array<double, 2> p) {
        return -overlap(complexd(p[0], p[1]));
    };
    auto [pt, val] =
        detail::nelder_mead_2d(neg, {bw.real(), bw.imag()}, 0.02, 1e-11);
    best = std::max(best, -val);
    return std::sqrt(std::max(0.0, 2.0 - 2.0 * best));
}

// ---------------------------------------------------------------------------
// Quantitative RKHS lemma.

struct RkhsResult {
    double delta = 0.0;   // (||f||^2 - |f(x)|^2 K(x,x)^{-1}) / ||f||^2
    double lhs = 0.0;     // ||f - c f_x||
    double rhs = 0.0;     // sqrt(2) ||f|| delta^{1/2}
    bool bound_holds = false;
};

inline RkhsResult rkhs_delta(const BergmanFunction& f, complexd x) {
    if (!(std::abs(x) < 1.0))
        throw std::domain_error("rkhs_delta: require x in D");
    const double n2 = f.norm2();
    if (!(n2 > 0.0)) throw std::domain_error("rkhs_delta: ||f|| = 0");
    const AlphaParam& al = f.alpha();
    const complexd fx = evaluate(f, x);
    // |f(x)|^2 / K(x,x) = (pi/(alpha+1)) |f(x)|^2 (1-|x|^2)^(alpha+2)
    const double overlap2 = kPi / al.p1() * std::norm(fx) *
                            std::pow(1.0 - std::norm(x), al.p1() + 1.0);
    RkhsResult r;
    r.delta = std::clamp((n2 - overlap2) / n2, 0.0, 1.0);
    const double nf = std::sqrt(n2);
    const complexd c =
        std::abs(fx) > 1e-300 ? nf * fx / std::abs(fx) : complexd(nf);
    const BergmanFunction fw =
        kernel_function(al, x, std::max(64, 2 * f.degree()));
    double lhs2 = 0.0;
    const size_t n = std::max(f.coeffs().size(), fw.coeffs().size());
    for (size_t k = 0; k < n; ++k) {
        const complexd ak = k < f.coeffs().size() ? f.coeffs()[k] : 0.0;
        const complexd bk = k < fw.coeffs().size() ? fw.coeffs()[k] : 0.0;
        lhs2 += std::norm(ak - c * bk);
    }
    r.lhs = std::sqrt(lhs2);
    r.rhs = std::sqrt(2.0 * r.delta) * nf;
    r.bound_holds = r.lhs <= r.rhs + 1e-9 * nf;
    return r;
}

// ---------------------------------------------------------------------------
// Growth constants.

// M_alpha(s) = C (1 + (alpha+2)/(alpha+1) [ (1+s/pi)^(alpha+1) - 1 ]).
inline double M_alpha_s(const AlphaParam& alpha, double s, double C) {
    if (!(C > 0.0)) throw std::domain_error("M_alpha_s: require C > 0");
    return C * (1.0 + (alpha.p1() + 1.0) * growth_ratio(alpha, s));
}

inline double log_M_alpha_s(const AlphaParam& alpha, double s, double C) {
    // For alpha large the bracket is dominated by its second term.
    const double L = std::log1p(s / kPi);
    const double big = std::log(alpha.p1() + 1.0) - std::log(alpha.p1()) +
                       alpha.p1() * L;
    if (big > 700.0) return std::log(C) + big;
    return std::log(M_alpha_s(alpha, s, C));
}

// Upper bound for the set-stability constant K(s,alpha):
//   C s^{-1} ( pi/(alpha+1) theta/M + (1+s/pi)^(3 alpha+5)/(alpha+2) )
//   + 2 sqrt(M) (1 + C(alpha+2))/(C(alpha+2)) (1+s/pi)^(alpha+2).
inline double K_s_alpha(const AlphaParam& alpha, double s, double C) {
    if (!(C > 0.0) || !(s > 0.0))
        throw std::domain_error("K_s_alpha: require s > 0, C > 0");
    const double M = M_alpha_s(alpha, s, C);
    const double term1 = kPi * theta_over_alpha_p1(alpha, s) / M;
    const double term2 =
        pow1p(s / kPi, 3.0 * alpha.value() + 5.0) / (alpha.p1() + 1.0);
    const double ca2 = C * (alpha.p1() + 1.0);
    const double term3 = 2.0 * std::sqrt(M) * ((1.0 + ca2) / ca2) *
                         pow1p(s / kPi, alpha.p1() + 1.0);
    return C / s * (term1 + term2) + term3;
}

// Exact alpha -> -1 limit of K_s_alpha at the same C.
inline double K_limit_hardy(double s, double C) {
    const double L = std::log1p(s / kPi);
    const double M = C * (1.0 + L);
    const double term1 = kPi * L / M;
    const double term2 = pow1p(s / kPi, 2.0);
    const double term3 =
        2.0 * std::sqrt(M) * ((1.0 + C) / C) * pow1p(s / kPi, 1.0);
    return C / s * (term1 + term2) + term3;
}

// ---------------------------------------------------------------------------
// Normalization pipeline: move the peak of u to the origin (unitary
// Mobius transport), then rotate the phase so f(0) > 0.

inline BergmanFunction normalize_peak_at_origin(const BergmanFunction& f) {
    const BergmanFunction g = f.normalized();
    auto [T, peak] = detail::peak_density(g);
    (void)T;
    if (std::abs(peak) < 1e-12) return phase_normalize(g);
    return phase_normalize(mobius_transport(g, peak));
}

// ---------------------------------------------------------------------------
// Super-level-set estimate audit.

// Root of (t - t^2/256)^2 - 1 + t/(1 + t^2/256) in (0,1); ~0.6194.
inline double tilde_c0() {
    auto g = [](double t) {
        const double q = t * t / 256.0;
        return (t - q) * (t - q) - 1.0 + t / (1.0 + q);
    };
    double lo = 0.1, hi = 0.999;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

struct SuperLevelAudit {
    double c0 = 0.0, K0 = 0.0, a0_sq = 0.0;
    double max_ratio = 0.0;  // max over the t-grid of rho(t) / bound(t)
    bool hypothesis_met = false;
    bool holds = false;  // max_ratio <= 1 (+tol)
};

// rho(t) <= pi (1 + K0 (1-a0^2))/a0^2 ( ((alpha+1) a0^2 / (pi t))^{1/(alpha+2)} - 1 )
// on t in ((alpha+1) c0 / pi, (alpha+1) a0^2 / pi), K0 = C_probe / c0^3.
// The function is normalized (peak at 0, unit norm) before auditing.
inline SuperLevelAudit check_superlevel_bound(const BergmanFunction& f,
                                              double c0, double C_probe,
                                              int t_points = 25) {
    static const double c0_min = tilde_c0();
    if (!(c0 > c0_min) || !(c0 < 1.0))
        throw std::domain_error(
            "check_superlevel_bound: c0 must lie in (c0_tilde, 1), c0_tilde "
            "~= 0.6194");
    if (!(C_probe > 0.0))
        throw std::domain_error("check_superlevel_bound: C_probe > 0");
    const BergmanFunction g = normalize_peak_at_origin(f);
    const AlphaParam& al = g.alpha();
    DensityProfile prof(g);
    const double T = prof.max_u();
    const double a0_sq = std::min(1.0, kPi / al.p1() * T);
    const double d0_sq = 1.0 - a0_sq;

    SuperLevelAudit audit;
    audit.c0 = c0;
    audit.K0 = C_probe / (c0 * c0 * c0);
    audit.a0_sq = a0_sq;
    audit.hypothesis_met = std::sqrt(d0_sq) < c0 / 16.0;

    const double t_lo = al.p1() * c0 / kPi;
    const double t_hi = al.p1() * a0_sq / kPi;
    if (!(t_lo < t_hi)) {  // c0 >= a0^2: empty window
        audit.holds = true;
        audit.max_ratio = 0.0;
        return audit;
    }
    const double kap = (1.0 + audit.K0 * d0_sq) / a0_sq;
    double worst = 0.0;
    for (int i = 0; i < t_points; ++i) {
        const double t = t_lo + (t_hi - t_lo) * (i + 0.5) / t_points;
        const double bound =
            kPi * kap * (std::pow(t_hi / t, 1.0 / (al.p1() + 1.0)) - 1.0);
        if (!(bound > 0.0)) continue;
        worst = std::max(worst, prof.rho(t) / bound);
    }
    audit.max_ratio = worst;
    audit.holds = worst <= 1.0 + 1e-9;
    return audit;
}

// ---------------------------------------------------------------------------
// Rearrangement gap: int_0^{s*} (v* - u*) ds, s* the first crossing.

struct RearrangementGap {
    double gap = 0.0;
    double s_star = 0.0;
    bool crossing_found = false;
};

inline RearrangementGap rearrangement_gap(const BergmanFunction& f,
                                          double s_cap = 1e3) {
    const BergmanFunction g = f.normalized();
    const AlphaParam& al = g.alpha();
    DensityProfile prof(g);
    const double T = prof.max_u();

    RearrangementGap res;
    auto h = [&](double s) { return v_star(al, s) - prof.u_star(s); };

    if (kPi / al.p1() * T > 1.0 - 1e-11) {
        // extremal: u* == v*, first crossing at 0
        res.s_star = 0.0;
        res.crossing_found = true;
        res.gap = 0.0;
        return res;
    }
    // h(0+) > 0; scan a geometric s-grid for the first sign change
    double prev_s = 1e-4, prev_h = h(prev_s);
    double cross_lo = 0.0, cross_hi = 0.0;
    for (double s = 2e-4; s <= s_cap; s *= 1.35) {
        const double hs = h(s);
        if (prev_h > 0.0 && hs <= 0.0) {
            cross_lo = prev_s;
            cross_hi = s;
            break;
        }
        prev_s = s;
        prev_h = hs;
    }
    if (cross_hi == 0.0) {
        res.s_star = s_cap;
        res.crossing_found = false;
    } else {
        for (int i = 0; i < 80; ++i) {
            const double mid = 0.5 * (cross_lo + cross_hi);
            (h(mid) > 0.0 ? cross_lo : cross_hi) = mid;
            if (cross_hi - cross_lo < 1e-12 * (1.0 + cross_hi)) break;
        }
        res.s_star = 0.5 * (cross_lo + cross_hi);
        res.crossing_found = true;
    }
    // layer cake: int_0^S u* ds = S u*(S) + int_{u*(S)}^T rho(t) dt,
    // and int_0^S v* ds = theta(S).
    const double t_star = prof.u_star(res.s_star);
    res.gap = theta(al, res.s_star) - res.s_star * t_star -
              prof.rho_integral(t_star, T);
    return res;
}

// ---------------------------------------------------------------------------
// Enclosure radii for near-extremal level sets.  Input in the
// f = sqrt((alpha+1)/pi) + eps g normalization (peak of u at 0, f(0) > 0);
// the first basis coefficient of that constant is exactly 1.

struct EnclosureReport {
    double r_minus = 0.0, r_plus = 0.0;
    double epsilon = 0.0;
    bool L_in_A = false, A_in_E = false, L_in_E = false;
    bool regime_met = false;
};

inline EnclosureReport enclosure_radii(const BergmanFunction& f, double s) {
    const AlphaParam& al = f.alpha();
    EnclosureReport rep;
    // eps = || f - sqrt((alpha+1)/pi) ||
    double e2 = std::norm(f.coeffs()[0] - 1.0);
    for (size_t k = 1; k < f.coeffs().size(); ++k)
        e2 += std::norm(f.coeffs()[k]);
    rep.epsilon = std::sqrt(e2);

    const double n2 = f.norm2();
    DensityProfile prof(f);  // profile of f normalized; rescale below
    const double ustar = n2 * prof.u_star(s);
    const double pad = 3.0 * rep.epsilon * al.p1() / kPi;
    const double v0 = al.p1() / kPi;
    if (!(ustar - pad > 0.0) || !(ustar + pad < v0)) {
        rep.regime_met = false;
        return rep;
    }
    rep.regime_met = true;
    auto radius_of_level = [&](double level) {
        return std::sqrt(
            1.0 - std::pow(kPi / al.p1() * level, 1.0 / (al.p1() + 1.0)));
    };
    rep.r_minus = radius_of_level(ustar + pad);
    rep.r_plus = radius_of_level(ustar - pad);

    // inclusion checks by dense sampling of u (rescaled to f's norm)
    auto u_of = [&](complexd z) { return n2 * u_density(prof.normalized_function(), z); };
    bool L_in_A = true, A_in_E = true;
    for (int j = 0; j < 64; ++j) {
        const double th = 2.0 * kPi * (j + 0.5) / 64.0;
        // boundary and interior of L must satisfy u > u*(s)
        for (double frac : {0.25, 0.5, 0.75, 0.999}) {
            const complexd z = std::polar(rep.r_minus * frac, th);
            if (!(u_of(z) > ustar * (1.0 - 1e-10))) L_in_A = false;
        }
        // outside E (up to the scan horizon) u must stay <= u*(s)
        const double r_hi = 0.5 * (rep.r_plus + 1.0);
        for (int i = 0; i < 48; ++i) {
            const double r =
                rep.r_plus * (1.0 + 1e-10) +
                (r_hi - rep.r_plus) * (i + 0.5) / 48.0;
            if (!(u_of(std::polar(r, th)) <= ustar * (1.0 + 1e-10)))
                A_in_E = false;
        }
    }
    rep.L_in_A = L_in_A;
    rep.A_in_E = A_in_E;
    rep.L_in_E = rep.r_minus <= rep.r_plus;
    return rep;
}

// ---------------------------------------------------------------------------
// Assembled stability checks.

struct StabilityReport {
    double a0_sq = 0.0;
    complexd best_omega = 0.0;
    double distance = 0.0;
    double deficit = 0.0;
    double M = 0.0;
    double lhs_over_sqrt_deficit = 0.0;
    bool bound_holds = false;
    double min_admissible_C = 0.0;  // (1-a0^2)/(delta Mtilde), Mtilde at C=1
};

inline StabilityReport check_stability_function(const BergmanFunction& f,
                                                const HyperbolicSet& Omega,
                                                double C) {
    const BergmanFunction g = f.normalized();
    StabilityReport rep;
    const OverlapResult ov = extremal_overlap(g);
    rep.a0_sq = ov.a0_sq;
    rep.best_omega = ov.best_omega;
    rep.distance = std::sqrt(std::max(0.0, 2.0 * (1.0 - std::sqrt(ov.a0_sq))));
    const DeficitReport dr = deficit(g, Omega);
    rep.deficit = dr.deficit;
    rep.M = M_alpha_s(g.alpha(), dr.s, C);
    if (rep.deficit <= 0.0) {
        if (rep.distance > 1e-8)
            throw std::runtime_error(
                "check_stability_function: zero deficit with nonzero "
                "distance");
        rep.lhs_over_sqrt_deficit = 0.0;
        rep.bound_holds = true;
        rep.min_admissible_C = 0.0;
        return rep;
    }
    rep.lhs_over_sqrt_deficit = rep.distance / std::sqrt(rep.deficit);
    rep.bound_holds =
        rep.distance <= std::sqrt(rep.M * rep.deficit) * (1.0 + 1e-9);
    rep.min_admissible_C = (1.0 - rep.a0_sq) /
                           (rep.deficit * M_alpha_s(g.alpha(), dr.s, 1.0));
    return rep;
}

struct SetStabilityReport {
    double asym = 0.0;
    complexd best_center = 0.0;
    double deficit = 0.0;
    double bound_ratio = 0.0;  // asym / sqrt(deficit)
    bool equality_case_violated = false;
};

inline SetStabilityReport check_stability_set(const BergmanFunction& f,
                                              const HyperbolicSet& Omega) {
    SetStabilityReport rep;
    const AsymmetryResult ar = asymmetry(Omega);
    rep.asym = ar.value;
    rep.best_center = ar.best_center;
    rep.deficit = deficit(f.normalized(), Omega).deficit;
    if (rep.deficit <= 0.0) {
        rep.bound_ratio = 0.0;
        rep.equality_case_violated = rep.asym > 1e-6;
        return rep;
    }
    rep.bound_ratio = rep.asym / std::sqrt(rep.deficit);
    return rep;
}

// ---------------------------------------------------------------------------
// Audit of the checkable proof inequalities.

struct AuditRow {
    std::string check_id;
    std::string params;
    double margin = 0.0;  // >= 0 means the inequality holds
    bool hypothesis_met = true;
    bool pass = false;
};

struct AuditSweep {
    std::vector<double> alphas;
    std::vector<double> a0_sqs = {0.97, 0.99, 0.999, 0.9999, 0.99999};
    std::vector<double> c0s = {0.62, 0.70, 0.80, 0.90, 0.95};
    double C_probe = 1.0;
    double s_max = 50.0;
    int s_points = 200;
};

inline AuditSweep default_audit_sweep() {
    AuditSweep sw;
    // alpha+1 log-spaced over [0.01, 101], 25 points
    const double lo = std::log(0.01), hi = std::log(101.0);
    for (int i = 0; i < 25; ++i)
        sw.alphas.push_back(std::exp(lo + (hi - lo) * i / 24.0) - 1.0);
    return sw;
}

namespace detail {

inline std::string fmt_params(std::initializer_list<std::pair<const char*, double>> kv) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : kv) {
        if (!first) os << " ";
        first = false;
        os << k << "=" << v;
    }
    return os.str();
}

}  // namespace detail

// (a) the sign-change radii r_n decrease in n.
inline AuditRow audit_rn_decreasing(double a0_sq, double K0, int n_max = 40) {
    const double d0_sq = 1.0 - a0_sq;
    const double y = (1.0 + K0 * d0_sq) / a0_sq;
    double margin = 1e300;
    auto r_of = [&](int n) {
        const double yn = std::pow(y, 1.0 / n);
        return 1.0 - d0_sq * yn / (yn - a0_sq);
    };
    double prev = r_of(1);
    for (int n = 2; n <= n_max; ++n) {
        const double cur = r_of(n);
        margin = std::min(margin, prev - cur);
        prev = cur;
    }
    AuditRow row{"a:rn_decreasing",
                 detail::fmt_params({{"a0sq", a0_sq}, {"K0", K0}}), margin,
                 true, margin >= -1e-9};
    return row;
}

// (b) the tangent line at 0 stays below y(s) = v*(s) - w(s).
inline AuditRow audit_tangent_minorant(const AlphaParam& alpha, double a0_sq,
                                       double K0, double s_max,
                                       int s_points) {
    const double d0_sq = 1.0 - a0_sq;
    const double b = a0_sq / (1.0 + K0 * d0_sq);
    const double A = alpha.p1() / kPi, e = alpha.p1() + 1.0;
    auto y = [&](double s) {
        return A * (pow1p(s / kPi, -e) - a0_sq * pow1p(b * s / kPi, -e));
    };
    auto ylin = [&](double s) {
        return A * (d0_sq + e / kPi * (a0_sq * a0_sq / (1.0 + K0 * d0_sq) - 1.0) * s);
    };
    double margin = 1e300;
    for (int i = 0; i <= s_points; ++i) {
        const double s = s_max * i / s_points;
        margin = std::min(margin, y(s) - ylin(s));
    }
    AuditRow row{"b:tangent_minorant",
                 detail::fmt_params(
                     {{"alpha", alpha.value()}, {"a0sq", a0_sq}, {"K0", K0}}),
                 margin, true, margin >= -1e-9};
    return row;
}

// (c) the comparison crossing s~ is maximal at the Hardy end:
//     s~ <= pi (1 + K0 (1-a0^2)) / (K0 a0^2).
inline AuditRow audit_stilde_bound(const AlphaParam& alpha, double a0_sq,
                                   double K0) {
    const double d0_sq = 1.0 - a0_sq;
    const double e = alpha.p1() + 1.0;
    const double num = 1.0 - std::pow(a0_sq, -1.0 / e);
    const double den =
        std::pow(a0_sq, alpha.p1() / e) - 1.0 - K0 * d0_sq;
    const double stilde = kPi * (1.0 + K0 * d0_sq) * num / den;
    const double bound = kPi * (1.0 + K0 * d0_sq) / (K0 * a0_sq);
    AuditRow row{"c:stilde_bound",
                 detail::fmt_params(
                     {{"alpha", alpha.value()}, {"a0sq", a0_sq}, {"K0", K0}}),
                 bound - stilde, true, bound - stilde >= -1e-9};
    return row;
}

// (d) the uniform level bound stays below 1 - eps0 with
//     eps0 = 1 - exp(-1/(1 + C/c0^3)).
inline AuditRow audit_uniform_level_bound(const AlphaParam& alpha,
                                          double a0_sq, double c0, double C) {
    const double kap = (1.0 + (1.0 - a0_sq) * C / (c0 * c0 * c0)) / a0_sq;
    const double e = alpha.p1() + 1.0;
    const double lhs =
        std::pow((std::pow(a0_sq, 1.0 / e) - 1.0 / kap) / (1.0 - 1.0 / kap),
                 e);
    const double cap = std::exp(-1.0 / (1.0 + C / (c0 * c0 * c0)));
    AuditRow row{"d:uniform_level_bound",
                 detail::fmt_params({{"alpha", alpha.value()},
                                     {"a0sq", a0_sq},
                                     {"c0", c0},
                                     {"C", C}}),
                 cap - lhs, true, cap - lhs >= -1e-9};
    return row;
}

// (e) the admissible shrink factor threshold (alpha+2)^{-1/(alpha+1)}:
//     (alpha+2) c^{alpha+1} crosses 1 exactly there.
inline AuditRow audit_sigma_threshold(const AlphaParam& alpha) {
    const double thr =
        std::exp(-std::log(alpha.p1() + 1.0) / alpha.p1());
    auto g = [&](double c) {
        return (alpha.p1() + 1.0) * std::pow(c, alpha.p1());
    };
    const double above = g(thr * (1.0 + 1e-6)) - 1.0;
    const double below = 1.0 - g(thr * (1.0 - 1e-6));
    AuditRow row{"e:sigma_threshold",
                 detail::fmt_params({{"alpha", alpha.value()}}),
                 std::min(above, below), true,
                 std::fabs(g(thr) - 1.0) <= 1e-9 && above > 0.0 &&
                     below > 0.0};
    return row;
}

// (f) the power-series bound sum_{n>=1} ((alpha+3)_n / (n+1)!) r0^{2n}
//     (1/a0^2 - d0^{2n}) <= 1 at the admissible r0.
inline AuditRow audit_series_bound(const AlphaParam& alpha, double a0_sq,
                                   double c0) {
    const double d0_sq = 1.0 - a0_sq;
    AuditRow row;
    row.check_id = "f:series_bound";
    row.params = detail::fmt_params(
        {{"alpha", alpha.value()}, {"a0sq", a0_sq}, {"c0", c0}});
    row.hypothesis_met = std::sqrt(d0_sq) < c0 / 16.0 && c0 > tilde_c0();
    if (!row.hypothesis_met) {
        row.margin = 0.0;
        row.pass = true;  // out of regime: vacuously fine, flagged
        return row;
    }
    const double r0_sq =
        1.0 - std::pow((c0 - d0_sq) / (a0_sq - d0_sq),
                       1.0 / (alpha.p1() + 1.0));
    double sum = 0.0, coeff = 1.0, dpow = 1.0;
    for (int n = 1; n <= 4000; ++n) {
        coeff *= (alpha.p1() + 1.0 + n) / (n + 1.0) * r0_sq;
        // coeff now equals (alpha+3)_n r0^{2n} / (n+1)!
        dpow *= d0_sq;
        const double term = coeff * (1.0 / a0_sq - dpow);
        sum += term;
        if (term < 1e-18 * std::max(1.0, sum) && n > 8) break;
    }
    row.margin = 1.0 - sum;
    row.pass = row.margin >= -1e-9;
    return row;
}

inline std::vector<AuditRow> audit_proof_inequalities(const AuditSweep& sw) {
    std::vector<AuditRow> rows;
    for (double a : sw.alphas) {
        const AlphaParam alpha(a);
        rows.push_back(audit_sigma_threshold(alpha));
        for (double a0_sq : sw.a0_sqs) {
            for (double c0 : sw.c0s) {
                const double K0 = sw.C_probe / (c0 * c0 * c0);
                rows.push_back(audit_tangent_minorant(alpha, a0_sq, K0,
                                                      sw.s_max, sw.s_points));
                rows.push_back(audit_stilde_bound(alpha, a0_sq, K0));
                rows.push_back(
                    audit_uniform_level_bound(alpha, a0_sq, c0, sw.C_probe));
                rows.push_back(audit_series_bound(alpha, a0_sq, c0));
            }
            rows.push_back(audit_rn_decreasing(a0_sq, 10.0));
        }
    }
    return rows;
}

}  // namespace hypconc
