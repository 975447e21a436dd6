#include <catch_amalgamated.hpp>

#include "hypconc/asymptotics.hpp"
#include "hypconc/bergman.hpp"
#include "hypconc/stability.hpp"
#include "test_util.hpp"

using namespace hypconc;
using Catch::Approx;

namespace {
BergmanFunction random_unit(const AlphaParam& alpha, int degree,
                            std::uint64_t seed) {
    return BergmanFunction(alpha, testutil::random_coeffs(degree, seed))
        .normalized();
}
}  // namespace

TEST_CASE("evaluation in the normalized basis") {
    AlphaParam a0(0.0);
    SECTION("constant coefficient vector") {
        for (double av : {-0.5, 0.0, 3.0}) {
            AlphaParam alpha(av);
            BergmanFunction f(alpha, {1.0});
            CHECK(evaluate(f, 0.0).real() ==
                  Approx(std::sqrt(alpha.p1() / kPi)).epsilon(1e-14));
        }
    }
    SECTION("pure first mode vanishes at the origin") {
        BergmanFunction f(a0, {0.0, 1.0});
        CHECK(std::abs(evaluate(f, 0.0)) == 0.0);
    }
    SECTION("naive summation oracle") {
        const double r = 1.0 / std::sqrt(2.0);
        BergmanFunction f(a0, {r, 0.0, r});
        const complexd z(0.3, 0.0);
        complexd oracle = 0.0;
        oracle += r / std::sqrt(basis_norm_c(0, a0));
        oracle += r * z * z / std::sqrt(basis_norm_c(2, a0));
        CHECK(std::abs(evaluate(f, z) - oracle) < 1e-15);
    }
    CHECK_THROWS_AS(evaluate(BergmanFunction(a0, {1.0}), complexd(1.0, 0.0)),
                    std::domain_error);
}

TEST_CASE("inner products") {
    AlphaParam a0(0.0), a2(2.0);
    const BergmanFunction f = random_unit(a0, 5, 21);
    SECTION("norm identity and basis orthogonality") {
        CHECK(inner(f, f).real() == Approx(f.norm2()).epsilon(1e-14));
        BergmanFunction e1(a0, {0.0, 1.0}), e3(a0, {0.0, 0.0, 0.0, 1.0});
        CHECK(std::abs(inner(e1, e3)) == 0.0);
    }
    SECTION("mismatched alpha rejected") {
        const BergmanFunction g = random_unit(a2, 5, 22);
        CHECK_THROWS_AS(inner(f, g), std::invalid_argument);
    }
    SECTION("grid-integral oracle") {
        for (double av : {0.0, 2.0}) {
            AlphaParam alpha(av);
            const BergmanFunction u = random_unit(alpha, 6, 31);
            const BergmanFunction v = random_unit(alpha, 6, 32);
            const QuadratureGrid grid =
                build_grid(256, 64, default_r_max(alpha));
            const complexd oracle = integrate_fn(
                grid,
                [&](complexd z) {
                    return evaluate(u, z) * std::conj(evaluate(v, z));
                },
                Weight::bergman_alpha, alpha);
            CHECK(std::abs(inner(u, v) - oracle) < 1e-9);
        }
    }
}

TEST_CASE("reproducing kernels") {
    SECTION("kernel at the origin is the constant") {
        AlphaParam a5(5.0);
        const BergmanFunction k0 = kernel_function(a5, 0.0);
        CHECK(std::abs(k0.coeffs()[0] - 1.0) < 1e-15);
        CHECK(k0.norm2() == Approx(1.0).epsilon(1e-14));
    }
    SECTION("unit norm across parameters") {
        for (double av : {-0.9, 0.0, 4.0, 30.0})
            for (complexd w : {complexd(0.3, 0.0), complexd(-0.2, 0.55),
                               complexd(0.0, 0.8)}) {
                const BergmanFunction k = kernel_function(AlphaParam(av), w);
                CHECK(k.norm2() == Approx(1.0).margin(2e-10));
            }
    }
    SECTION("reproducing identity") {
        for (double av : {-0.5, 0.0, 2.0}) {
            AlphaParam alpha(av);
            const BergmanFunction f = random_unit(alpha, 6, 77);
            for (complexd w : {complexd(0.25, -0.3), complexd(0.0, 0.6)}) {
                const BergmanFunction kw = kernel_function(alpha, w, 512);
                const complexd lhs = inner(f, kw);
                const complexd rhs =
                    std::sqrt(kPi / alpha.p1()) *
                    std::pow(1.0 - std::norm(w), 0.5 * (alpha.p1() + 1.0)) *
                    evaluate(f, w);
                CHECK(std::abs(lhs - rhs) < 1e-10);
                CHECK(std::abs(lhs) <= f.norm() + 1e-12);
            }
        }
    }
}

TEST_CASE("density u and the comparison profile v*") {
    AlphaParam a3(3.0);
    const BergmanFunction c(a3, {1.0});
    SECTION("normalized constant") {
        CHECK(u_density(c, 0.0) == Approx(a3.p1() / kPi).epsilon(1e-14));
        const double r = std::sqrt(0.5);
        CHECK(u_density(c, complexd(r, 0.0)) ==
              Approx(a3.p1() / kPi * std::pow(2.0, -(a3.p1() + 1.0)))
                  .epsilon(1e-13));
    }
    SECTION("u is bounded by (alpha+1)/pi ||f||^2") {
        const BergmanFunction f = random_unit(a3, 6, 5);
        for (int i = 0; i < 200; ++i) {
            const complexd z = std::polar(0.995 * i / 199.0, 0.37 * i);
            CHECK(u_density(f, z) <= a3.p1() / kPi + 1e-12);
        }
    }
    SECTION("v* closed form") {
        CHECK(v_star(a3, 0.0) == Approx(a3.p1() / kPi).epsilon(1e-14));
        AlphaParam a0(0.0);
        CHECK(v_star(a0, kPi) == Approx(1.0 / (4.0 * kPi)).epsilon(1e-14));
        // normalization: 1 - (1+s/pi)^{-(alpha+1)} -> 1 as s -> inf
        CHECK(theta_over_alpha_p1(a3, 1e12) * a3.p1() ==
              Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("distribution function and rearrangement") {
    AlphaParam a0(0.0);
    SECTION("radial profile matches the closed form") {
        const BergmanFunction c(a0, {1.0});
        DensityProfile prof(c);
        for (double t : {0.05, 0.1, 0.2, 0.3}) {
            const double expect =
                kPi * (std::pow((a0.p1() / kPi) / t, 1.0 / (a0.p1() + 1.0)) -
                       1.0);
            CHECK(prof.rho(t) == Approx(expect).epsilon(1e-10));
        }
        CHECK(prof.rho(prof.max_u() * 1.01) == 0.0);
        CHECK_THROWS_AS(prof.rho(0.0), std::domain_error);
    }
    SECTION("u* inverts rho and matches v* for the extremal") {
        const BergmanFunction c(a0, {1.0});
        DensityProfile prof(c);
        for (double s : {0.3, kPi, 9.0}) {
            CHECK(prof.u_star(s) == Approx(v_star(a0, s)).epsilon(1e-9));
            CHECK(prof.rho(prof.u_star(s)) == Approx(s).epsilon(1e-7));
        }
        // s -> 0 recovers the max
        CHECK(prof.u_star(1e-7) == Approx(prof.max_u()).epsilon(1e-3));
    }
    SECTION("rho nonincreasing for a random function") {
        const BergmanFunction f = random_unit(a0, 5, 99);
        DensityProfile prof(f);
        double prev = 1e300;
        for (int i = 1; i <= 24; ++i) {
            const double t = prof.max_u() * i / 25.0;
            const double r = prof.rho(t);
            CHECK(r <= prev + 1e-12);
            prev = r;
        }
    }
    SECTION("layer cake: mass equals the integral of rho") {
        for (double av : {0.0, 2.0}) {
            AlphaParam alpha(av);
            const BergmanFunction f = random_unit(alpha, 5, 123);
            DensityProfile prof(f);
            const double T = prof.max_u();
            // substitute t = T sigma^(alpha+2): integrand bounded
            std::vector<double> x, w;
            gauss_legendre_ab(160, 0.0, 1.0, x, w);
            double mass = 0.0;
            const double e = alpha.p1() + 1.0;
            for (size_t i = 0; i < x.size(); ++i) {
                const double t = T * std::pow(x[i], e);
                if (t <= 0.0) continue;
                mass += w[i] * prof.rho(t) * T * e * std::pow(x[i], e - 1.0);
            }
            CHECK(mass == Approx(1.0).epsilon(2e-6));
            // grid route for the same mass
            const QuadratureGrid grid =
                build_grid(220, 64, default_r_max(alpha));
            const double mass2 =
                integrate_fn(
                    grid,
                    [&](complexd z) {
                        return complexd(std::norm(evaluate(f, z)));
                    },
                    Weight::bergman_alpha, alpha)
                    .real();
            CHECK(mass2 == Approx(1.0).epsilon(1e-6));
        }
    }
    SECTION("r(s) = u*/v* is nondecreasing") {
        AlphaParam alpha(0.7);
        for (std::uint64_t seed : {1u, 2u}) {
            const BergmanFunction f =
                seed == 1u ? make_sharpness(alpha, 0.05).normalized()
                           : random_unit(alpha, 4, seed);
            DensityProfile prof(f);
            double prev = -1.0;
            for (int i = 0; i < 64; ++i) {
                const double s = 0.05 + 12.0 * i / 63.0;
                const double r = prof.u_star(s) / v_star(alpha, s);
                CHECK(r >= prev - 1e-8);
                prev = r;
            }
        }
    }
    SECTION("near-extremal upper profile bound") {
        // u*(s) <= (alpha+1)/pi a0^2 (1 + (a0^2/(1+K0 d0^2)) s/pi)^{-(alpha+2)}
        AlphaParam alpha(0.0);
        const double c0 = 0.7, C = 400.0, K0 = C / (c0 * c0 * c0);
        const BergmanFunction f = make_sharpness(alpha, 0.02).normalized();
        DensityProfile prof(f);
        const double a0_sq = kPi / alpha.p1() * prof.max_u();
        const double d0_sq = 1.0 - a0_sq;
        const double t0 = alpha.p1() * c0 / kPi;
        for (double s : {0.05, 0.2, 0.5, 1.0}) {
            const double w = alpha.p1() / kPi * a0_sq *
                             std::pow(1.0 + (a0_sq / (1.0 + K0 * d0_sq)) *
                                                s / kPi,
                                      -(alpha.p1() + 1.0));
            if (w <= t0) continue;
            CHECK(prof.u_star(s) <= w * (1.0 + 1e-9));
        }
    }
}

TEST_CASE("super-level masks") {
    AlphaParam a0(0.0);
    auto grid = std::make_shared<QuadratureGrid>(200, 256, 0.97);
    SECTION("constant function gives a centered disc") {
        const BergmanFunction c(a0, {1.0});
        const double t = 0.08;
        const GridMask m = super_level_set(c, t, grid);
        const double r2 =
            1.0 - std::pow(kPi * t / a0.p1(), 1.0 / (a0.p1() + 1.0));
        const AnalyticDisc expect =
            disc_from_euclidean(0.0, std::sqrt(r2));
        CHECK(std::fabs(mu_measure(m) - expect.s) <=
              rasterization_tolerance(expect, *grid));
    }
    SECTION("level above the max is empty") {
        const BergmanFunction c(a0, {1.0});
        const GridMask m = super_level_set(c, 1.0, grid);
        CHECK(mu_measure(m) == 0.0);
    }
    SECTION("near-extremal levels are star-shaped along rays") {
        const BergmanFunction f = make_sharpness(a0, 1e-3).normalized();
        DensityProfile prof(f);
        const double t = prof.u_star(kPi);
        for (int j = 0; j < 32; ++j) {
            const double th = 2.0 * kPi * j / 32.0;
            // u crosses t exactly once along each ray
            int crossings = 0;
            double prev = u_density(f, 0.0);
            for (int i = 1; i <= 400; ++i) {
                const double r = 0.97 * i / 400.0;
                const double cur = u_density(f, std::polar(r, th));
                if ((prev > t) != (cur > t)) ++crossings;
                prev = cur;
            }
            CHECK(crossings == 1);
        }
    }
}

TEST_CASE("Mobius transport is unitary and moves the peak") {
    AlphaParam a1(1.0);
    const BergmanFunction f = random_unit(a1, 5, 404);
    const complexd a(0.3, -0.25);
    const BergmanFunction g = mobius_transport(f, a);
    SECTION("norm is preserved") {
        CHECK(g.norm2() == Approx(f.norm2()).epsilon(1e-11));
    }
    SECTION("u composes with the disk automorphism") {
        for (complexd z : {complexd(0.1, 0.2), complexd(-0.4, 0.33),
                           complexd(0.62, 0.0)}) {
            const complexd w = mobius_unapply(a, z);  // phi_a(z)
            CHECK(u_density(g, z) ==
                  Approx(u_density(f, w)).epsilon(1e-9).margin(1e-12));
        }
    }
    SECTION("normalization pipeline lands the peak at zero") {
        const BergmanFunction h =
            normalize_peak_at_origin(random_unit(a1, 4, 405));
        auto [T, peak] = detail::peak_density(h);
        CHECK(std::abs(peak) < 1e-4);
        CHECK(h.coeffs()[0].imag() == Approx(0.0).margin(1e-12));
        CHECK(h.coeffs()[0].real() >= 0.0);
        CHECK(u_density(h, 0.0) == Approx(T).epsilon(1e-7));
    }
}
