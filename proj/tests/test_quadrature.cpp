#include <catch_amalgamated.hpp>

#include "hypconc/quadrature.hpp"
#include "test_util.hpp"

using namespace hypconc;
using Catch::Approx;

TEST_CASE("grid construction guards") {
    CHECK_THROWS_AS(build_grid(2, 64, 0.9), std::domain_error);
    CHECK_THROWS_AS(build_grid(16, 4, 0.9), std::domain_error);
    CHECK_THROWS_AS(build_grid(16, 64, 1.0), std::domain_error);
    CHECK_THROWS_AS(build_grid(16, 64, 1.2), std::domain_error);
}

TEST_CASE("radial rule reproduces plain integrals") {
    const QuadratureGrid grid = build_grid(64, 32, 0.85);
    double sum = 0.0;
    for (double w : grid.radial_weights()) sum += w;
    CHECK(sum == Approx(grid.t_max()).epsilon(1e-14));
}

TEST_CASE("tensor rule: area and weighted area") {
    AlphaParam a0(0.0);
    SECTION("area of the truncated disk") {
        const QuadratureGrid grid = build_grid(48, 32, 0.7);
        const complexd v =
            integrate_fn(grid, [](complexd) { return complexd(1.0); },
                         Weight::plain, a0);
        CHECK(v.real() == Approx(kPi * 0.49).epsilon(1e-13));
        CHECK(std::fabs(v.imag()) < 1e-15);
    }
    SECTION("alpha-weighted mass") {
        AlphaParam a2(2.0);
        const QuadratureGrid grid = build_grid(96, 32, 0.9);
        const complexd v =
            integrate_fn(grid, [](complexd) { return complexd(1.0); },
                         Weight::bergman_alpha, a2);
        const double expect =
            kPi * (1.0 - std::pow(1.0 - 0.81, 3.0)) / 3.0;
        CHECK(v.real() == Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("second moment with near-full truncation") {
    AlphaParam a0(0.0);
    const QuadratureGrid grid = build_grid(256, 16, std::sqrt(1.0 - 1e-12));
    const complexd v = integrate_fn(
        grid, [](complexd z) { return complexd(std::norm(z)); },
        Weight::plain, a0);
    CHECK(v.real() == Approx(kPi / 2.0).margin(5e-12));
}

TEST_CASE("angular exactness of monomial pairs") {
    AlphaParam a0(0.0);
    const QuadratureGrid grid = build_grid(32, 64, 0.9);
    // \int z^m conj(z)^n vanishes for m != n, |m-n| < M
    for (auto [m, n] : std::vector<std::pair<int, int>>{
             {1, 0}, {3, 1}, {7, 2}, {31, 30}, {20, 0}}) {
        const complexd v = integrate_fn(
            grid,
            [m = m, n = n](complexd z) {
                return std::pow(z, m) * std::pow(std::conj(z), n);
            },
            Weight::plain, a0);
        CHECK(std::abs(v) < 1e-14);
    }
    // f = z integrates to zero by symmetry
    const complexd vz = integrate_fn(
        grid, [](complexd z) { return z; }, Weight::plain, a0);
    CHECK(std::abs(vz) < 1e-14);
}

TEST_CASE("integrate checks sample shape and is linear") {
    AlphaParam a0(0.0);
    const QuadratureGrid grid = build_grid(8, 8, 0.5);
    std::vector<complexd> bad(grid.node_count() - 1, 1.0);
    CHECK_THROWS_AS(integrate(grid, bad, Weight::plain, a0),
                    std::invalid_argument);

    std::vector<complexd> f(grid.node_count()), g(grid.node_count()),
        h(grid.node_count());
    testutil::NormalGen gen(11);
    for (int i = 0; i < grid.node_count(); ++i) {
        f[i] = complexd(gen(), gen());
        g[i] = complexd(gen(), gen());
        h[i] = f[i] + 2.5 * g[i];
    }
    const complexd lhs = integrate(grid, h, Weight::plain, a0);
    const complexd rhs = integrate(grid, f, Weight::plain, a0) +
                         2.5 * integrate(grid, g, Weight::plain, a0);
    CHECK(std::abs(lhs - rhs) < 1e-13);
}

TEST_CASE("orthonormality of the weighted monomial basis on the grid") {
    for (double av : {0.0, 2.0, 10.0}) {
        AlphaParam alpha(av);
        const QuadratureGrid grid =
            build_grid(256, 160, default_r_max(alpha));
        const int N = 64;
        std::vector<double> scale(N + 1);
        for (int k = 0; k <= N; ++k)
            scale[k] = std::exp(-0.5 * log_basis_norm_c(k, alpha));
        double worst = 0.0;
        for (int m = 0; m <= N; m += 8)
            for (int n = m; n <= N; n += 8) {
                const complexd v = integrate_fn(
                    grid,
                    [&](complexd z) {
                        return std::pow(z, m) * std::pow(std::conj(z), n) *
                               scale[m] * scale[n];
                    },
                    Weight::bergman_alpha, alpha);
                const double target = (m == n) ? 1.0 : 0.0;
                worst = std::max(worst, std::abs(v - target));
            }
        CHECK(worst <= 1e-9);
    }
}

TEST_CASE("cell layer: closed-form cell measures agree with quadrature") {
    AlphaParam a15(1.5);
    const QuadratureGrid grid = build_grid(24, 16, 0.9);
    for (int ring : {0, 7, 23}) {
        const double ta = grid.cell_t_lo(ring), tb = grid.cell_t_hi(ring);
        const double area_oracle = grid.cell_dtheta() * 0.5 * (tb - ta);
        CHECK(grid.cell_area(ring) == Approx(area_oracle).epsilon(1e-14));
        const double mu_oracle =
            grid.cell_dtheta() * 0.5 *
            testutil::integrate(
                [](double t) { return 1.0 / ((1.0 - t) * (1.0 - t)); }, ta,
                tb, 1e-15);
        CHECK(grid.cell_mu(ring) == Approx(mu_oracle).epsilon(1e-11));
        const double am_oracle =
            grid.cell_dtheta() * 0.5 *
            testutil::integrate(
                [&](double t) { return std::pow(1.0 - t, 1.5); }, ta, tb,
                1e-15);
        CHECK(grid.cell_alpha_mass(ring, a15) ==
              Approx(am_oracle).epsilon(1e-11));
    }
}

TEST_CASE("per-cell product rule integrates smooth densities over masks") {
    AlphaParam a0(0.0);
    const auto grid = std::make_shared<QuadratureGrid>(32, 48, 0.9);
    std::vector<std::uint8_t> mask(grid->cell_count(), 0);
    // half-plane mask: sectors in the upper half
    for (int ring = 0; ring < grid->n_radial(); ++ring)
        for (int sec = 0; sec < grid->angular_count() / 2; ++sec)
            mask[grid->cell_index(ring, sec)] = 1;
    const double got = cell_integrate_real(
        *grid, mask, [](complexd z) { return std::norm(z); }, Weight::plain,
        a0, 5);
    // \int_{upper half, r<= .9} |z|^2 dA = pi/2 * (0.81)^2 / 2
    CHECK(got == Approx(kPi * 0.81 * 0.81 / 4.0).epsilon(1e-12));
}
