#include <catch_amalgamated.hpp>

#include "hypconc/hyperbolic.hpp"
#include "test_util.hpp"

using namespace hypconc;
using Catch::Approx;

namespace {
double mu_quadrature_euclidean_disc(complexd c, double R) {
    const PolarRule rule = disc_rule(c, R, 128, 160);
    return disc_integrate_real(rule, [](complexd z) {
        const double q = 1.0 - std::norm(z);
        return 1.0 / (q * q);
    });
}
}  // namespace

TEST_CASE("mobius maps") {
    CHECK(mobius_apply(0.0, complexd(0.3, 0.2)) == complexd(0.3, 0.2));
    CHECK(std::abs(mobius_apply(complexd(0.4, -0.1), complexd(0.4, -0.1))) <
          1e-15);
    CHECK_THROWS_AS(mobius_apply(complexd(1.0, 0.0), 0.0), std::domain_error);
    // boundary to boundary
    for (double th : {0.0, 1.0, 2.5}) {
        const complexd b = std::polar(1.0, th);
        CHECK(std::abs(mobius_apply(complexd(0.3, 0.5), b)) ==
              Approx(1.0).epsilon(1e-14));
    }
    // inverse pair
    const complexd a(0.35, -0.2), z(0.1, 0.6);
    CHECK(std::abs(mobius_unapply(a, mobius_apply(a, z)) - z) < 1e-15);
}

TEST_CASE("pseudo discs") {
    SECTION("centered, measure pi means rho^2 = 1/2") {
        const AnalyticDisc d = pseudo_disc(0.0, kPi);
        CHECK(d.rho * d.rho == Approx(0.5).epsilon(1e-14));
        CHECK(mu_measure(d) == Approx(kPi).epsilon(1e-14));
        CHECK(d.euclidean_radius == Approx(d.rho).epsilon(1e-14));
    }
    SECTION("defining property at random centers") {
        for (complexd x : {complexd(0.5, 0.0), complexd(-0.2, 0.66),
                           complexd(0.0, 0.9)}) {
            for (double s : {0.3, kPi, 10.0}) {
                const AnalyticDisc d = pseudo_disc(x, s);
                CHECK(std::abs(d.euclidean_center) + d.euclidean_radius <
                      1.0);
                // independent quadrature of mu over the Euclidean image
                CHECK(mu_quadrature_euclidean_disc(
                          d.euclidean_center, d.euclidean_radius) ==
                      Approx(s).epsilon(1e-9));
            }
        }
    }
    SECTION("off-center disc of measure pi via quadrature") {
        const AnalyticDisc d = pseudo_disc(complexd(0.5, 0.0), kPi);
        CHECK(mu_quadrature_euclidean_disc(d.euclidean_center,
                                           d.euclidean_radius) ==
              Approx(kPi).epsilon(1e-9));
    }
    CHECK_THROWS_AS(pseudo_disc(0.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(pseudo_disc(complexd(1.1, 0.0), 1.0), std::domain_error);
}

TEST_CASE("disc_from_euclidean inverts the pseudo-disc construction") {
    for (complexd x : {complexd(0.0, 0.0), complexd(0.37, -0.41),
                       complexd(-0.7, 0.1)}) {
        for (double s : {0.5, 2.0, 4.0 * kPi}) {
            const AnalyticDisc d = pseudo_disc(x, s);
            const AnalyticDisc e =
                disc_from_euclidean(d.euclidean_center, d.euclidean_radius);
            CHECK(std::abs(e.center - d.center) < 1e-12);
            CHECK(e.s == Approx(d.s).epsilon(1e-11));
        }
    }
}

TEST_CASE("grid masks: exact measures, rasterization convergence") {
    const AnalyticDisc d = pseudo_disc(complexd(0.23, 0.11), 2.0);
    SECTION("mask/grid shape is validated") {
        GridMask bad;
        bad.grid = std::make_shared<QuadratureGrid>(8, 8, 0.9);
        bad.cells.assign(3, 1);
        CHECK_THROWS_AS(mu_measure(bad), std::invalid_argument);
    }
    SECTION("measure converges to the closed form under refinement") {
        double prev_err = -1.0;
        for (int n : {40, 80, 160, 320}) {
            auto grid = std::make_shared<QuadratureGrid>(n, 2 * n, 0.97);
            const GridMask m = rasterize(d, grid);
            const double err = std::fabs(mu_measure(m) - d.s);
            CHECK(err <= rasterization_tolerance(d, *grid));
            if (prev_err > 0.0) CHECK(err < prev_err);
            prev_err = err;
        }
        // proportional refinement: expect better than first order overall
        auto coarse = std::make_shared<QuadratureGrid>(40, 80, 0.97);
        auto fine = std::make_shared<QuadratureGrid>(160, 320, 0.97);
        const double e0 = std::fabs(mu_measure(rasterize(d, coarse)) - d.s);
        const double e1 = std::fabs(mu_measure(rasterize(d, fine)) - d.s);
        const double order = std::log(e0 / e1) / std::log(4.0);
        CHECK(order >= 1.5);
    }
    SECTION("euclidean vs hyperbolic measure ordering") {
        auto grid = std::make_shared<QuadratureGrid>(64, 96, 0.97);
        const MeasurePair p = measure_pair(rasterize(d, grid));
        CHECK(p.hyperbolic_measure >= p.euclidean_area);
        const MeasurePair pd = measure_pair(d);
        CHECK(pd.hyperbolic_measure >= pd.euclidean_area);
    }
}

TEST_CASE("mu is Mobius invariant") {
    // quadrature on both sides of the Mobius image, no closed-form shortcut
    const complexd a(0.31, -0.22);
    for (double s : {0.7, kPi}) {
        for (complexd x : {complexd(0.0, 0.0), complexd(0.2, 0.4)}) {
            const AnalyticDisc S = pseudo_disc(x, s);
            const complexd image_center = mobius_apply(a, x);
            const AnalyticDisc Sm = pseudo_disc(image_center, s);
            const double m1 = mu_quadrature_euclidean_disc(
                S.euclidean_center, S.euclidean_radius);
            const double m2 = mu_quadrature_euclidean_disc(
                Sm.euclidean_center, Sm.euclidean_radius);
            CHECK(m1 == Approx(m2).epsilon(1e-6));
        }
    }
}

TEST_CASE("symmetric differences") {
    const AnalyticDisc A = pseudo_disc(0.0, 1.0);
    SECTION("S Delta S = 0") {
        CHECK(symm_diff_measure(HyperbolicSet(A), HyperbolicSet(A)) ==
              Approx(0.0).margin(1e-12));
    }
    SECTION("nested centered discs subtract") {
        const AnalyticDisc B = pseudo_disc(0.0, 3.0);
        CHECK(symm_diff_measure(HyperbolicSet(A), HyperbolicSet(B)) ==
              Approx(2.0).epsilon(1e-12));
    }
    SECTION("disc-disc agrees with inclusion-exclusion on masks") {
        auto grid = std::make_shared<QuadratureGrid>(220, 440, 0.97);
        const AnalyticDisc B = pseudo_disc(complexd(0.3, 0.1), 2.0);
        const GridMask mA = rasterize(A, grid), mB = rasterize(B, grid);
        // independent inclusion-exclusion with exact cell sums
        double inter = 0.0;
        for (int ring = 0; ring < grid->n_radial(); ++ring)
            for (int sec = 0; sec < grid->angular_count(); ++sec) {
                const int i = grid->cell_index(ring, sec);
                if (mA.cells[i] && mB.cells[i]) inter += grid->cell_mu(ring);
            }
        const double viaMasks =
            mu_measure(mA) + mu_measure(mB) - 2.0 * inter;
        const double viaCells = symm_diff_measure(mA, mB);
        CHECK(viaMasks == Approx(viaCells).margin(1e-12));
        // exact disc-disc path within rasterization tolerance of the masks
        const double exact =
            symm_diff_measure(HyperbolicSet(A), HyperbolicSet(B));
        CHECK(std::fabs(exact - viaCells) <=
              rasterization_tolerance(A, *grid) +
                  rasterization_tolerance(B, *grid));
    }
    SECTION("intersection measure is symmetric in its arguments") {
        const AnalyticDisc B = pseudo_disc(complexd(-0.25, 0.33), 2.4);
        const AnalyticDisc C = pseudo_disc(complexd(0.41, 0.05), 1.2);
        CHECK(mu_disc_intersection(B, C) ==
              Approx(mu_disc_intersection(C, B)).epsilon(1e-10));
    }
    SECTION("incompatible grids are rejected") {
        auto g1 = std::make_shared<QuadratureGrid>(16, 16, 0.9);
        auto g2 = std::make_shared<QuadratureGrid>(16, 32, 0.9);
        const GridMask m1 = rasterize(A, g1), m2 = rasterize(A, g2);
        CHECK_THROWS_AS(symm_diff_measure(m1, m2), std::invalid_argument);
    }
}

TEST_CASE("asymmetry") {
    SECTION("pseudo discs have zero asymmetry") {
        for (complexd x : {complexd(0.0, 0.0), complexd(0.45, 0.3)}) {
            const AsymmetryResult r =
                asymmetry(HyperbolicSet(pseudo_disc(x, 2.0)));
            CHECK(r.value <= 1e-7);
            CHECK(std::abs(r.best_center - x) < 1e-3);
        }
    }
    SECTION("annulus is genuinely asymmetric ... to discs") {
        auto grid = std::make_shared<QuadratureGrid>(96, 128, 0.97);
        const AnalyticDisc big = pseudo_disc(0.0, 2.0);
        GridMask m = rasterize(big, grid);
        // remove a concentric disc holding half the measure
        const GridMask hole = rasterize(pseudo_disc(0.0, 1.0), grid);
        for (size_t i = 0; i < m.cells.size(); ++i)
            if (hole.cells[i]) m.cells[i] = 0;
        const AsymmetryResult r = asymmetry(HyperbolicSet(m));
        // brute-force certificate over a coarse center sweep
        double best = 2.0;
        const double s = mu_measure(m);
        for (int i = 0; i < 9; ++i)
            for (int j = 0; j < 8; ++j) {
                const complexd x =
                    std::polar(0.8 * i / 8.0, 2.0 * kPi * j / 8.0);
                best = std::min(
                    best, symm_diff_measure(
                              HyperbolicSet(m),
                              HyperbolicSet(pseudo_disc(x, s))) /
                              s);
            }
        CHECK(r.value > 0.1);
        CHECK(r.value <= best + 1e-9);
    }
    SECTION("two far discs of half measure each") {
        auto grid = std::make_shared<QuadratureGrid>(96, 128, 0.97);
        const GridMask m1 = rasterize(pseudo_disc(complexd(-0.7, 0.0), 1.0),
                                      grid);
        const GridMask m2 = rasterize(pseudo_disc(complexd(0.7, 0.0), 1.0),
                                      grid);
        GridMask u = m1;
        for (size_t i = 0; i < u.cells.size(); ++i)
            u.cells[i] = m1.cells[i] || m2.cells[i];
        const AsymmetryResult r = asymmetry(HyperbolicSet(u));
        CHECK(r.value >= 0.5);
        CHECK(r.value <= 2.0);
    }
    SECTION("zero-measure set rejected") {
        GridMask empty;
        empty.grid = std::make_shared<QuadratureGrid>(8, 8, 0.9);
        empty.cells.assign(empty.grid->cell_count(), 0);
        CHECK_THROWS_AS(asymmetry(HyperbolicSet(empty)), std::domain_error);
    }
}

TEST_CASE("cayley transfer") {
    SECTION("point round trips") {
        const complexd z(0.3, 1.7);
        CHECK(std::abs(cayley_to_halfplane_point(cayley_to_disc_point(z)) -
                       z) < 1e-14);
    }
    SECTION("half-plane disc of nu-measure 4 pi maps to mu = pi") {
        const HalfPlaneDisc hp = {complexd(0.5, 2.0), 0.9};
        const double nu = nu_measure(hp);
        const AnalyticDisc img = cayley_to_disc(hp);
        CHECK(img.s == Approx(nu / 4.0).epsilon(1e-9));
    }
    SECTION("round trip through the disk is the identity") {
        const AnalyticDisc d = pseudo_disc(complexd(0.2, -0.1), kPi);
        // map three points back, reconstruct, and map forward again
        const complexd p1 =
            cayley_to_halfplane_point(d.euclidean_center + d.euclidean_radius);
        const complexd p2 =
            cayley_to_halfplane_point(d.euclidean_center - d.euclidean_radius);
        const complexd p3 = cayley_to_halfplane_point(
            d.euclidean_center + complexd(0.0, d.euclidean_radius));
        const complexd a = p1 - p3, b = p2 - p3;
        const complexd num = a * b * (std::conj(a) - std::conj(b));
        const complexd den = std::conj(a) * b - a * std::conj(b);
        const complexd c = p3 + num / den;
        const HalfPlaneDisc hp{c, std::abs(p1 - c)};
        const AnalyticDisc back = cayley_to_disc(hp);
        CHECK(std::abs(back.euclidean_center - d.euclidean_center) < 1e-9);
        CHECK(back.euclidean_radius ==
              Approx(d.euclidean_radius).epsilon(1e-9));
    }
    SECTION("cell-union masks: pushforward measure identity") {
        HalfPlaneMask m;
        m.x0 = -1.5;
        m.x1 = 1.5;
        m.y0 = 0.4;
        m.y1 = 3.0;
        m.nx = 40;
        m.ny = 40;
        m.cells.assign(size_t(m.nx) * m.ny, 0);
        testutil::NormalGen gen(5);
        for (auto& c : m.cells) c = gen() > 0.3 ? 1 : 0;
        const double nu = nu_measure(m);
        CHECK(nu > 0.0);
        // pull back onto a disk cell grid; coarse agreement, refining helps
        auto g1 = std::make_shared<QuadratureGrid>(80, 160, 0.995);
        auto g2 = std::make_shared<QuadratureGrid>(240, 480, 0.995);
        const double v1 = mu_measure(cayley_to_disc(m, g1));
        const double v2 = mu_measure(cayley_to_disc(m, g2));
        CHECK(std::fabs(v1 - nu / 4.0) / (nu / 4.0) < 0.08);
        CHECK(std::fabs(v2 - nu / 4.0) < std::fabs(v1 - nu / 4.0));
    }
    SECTION("unbounded or invalid masks rejected") {
        HalfPlaneMask m;
        m.x0 = 0;
        m.x1 = 1;
        m.y0 = 0.0;  // touches the boundary: nu infinite
        m.y1 = 1;
        m.nx = m.ny = 4;
        m.cells.assign(16, 1);
        CHECK_THROWS_AS(nu_measure(m), std::invalid_argument);
    }
}
