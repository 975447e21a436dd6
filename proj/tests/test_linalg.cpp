#include <catch_amalgamated.hpp>

#include "hypconc/linalg.hpp"
#include "test_util.hpp"

using namespace hypconc;
using Catch::Approx;

namespace {

HermitianMatrix random_hermitian(int n, std::uint64_t seed) {
    testutil::NormalGen gen(seed);
    HermitianMatrix A(n);
    for (int i = 0; i < n; ++i) {
        A.at(i, i) = gen();
        for (int j = i + 1; j < n; ++j) {
            const complexd v(gen(), gen());
            A.at(i, j) = v;
            A.at(j, i) = std::conj(v);
        }
    }
    return A;
}

}  // namespace

TEST_CASE("hermitian_eigen on closed-form cases") {
    SECTION("2x2") {
        HermitianMatrix A(2);
        A.at(0, 0) = 1.0;
        A.at(1, 1) = 3.0;
        A.at(0, 1) = complexd(0.0, -2.0);
        A.at(1, 0) = complexd(0.0, 2.0);
        const EigResult e = hermitian_eigen(A);
        // eigenvalues 2 -+ sqrt(5)
        CHECK(e.values[0] == Approx(2.0 - std::sqrt(5.0)).epsilon(1e-13));
        CHECK(e.values[1] == Approx(2.0 + std::sqrt(5.0)).epsilon(1e-13));
    }
    SECTION("diagonal passthrough") {
        HermitianMatrix A(3);
        A.at(0, 0) = 5.0;
        A.at(1, 1) = -1.0;
        A.at(2, 2) = 2.0;
        const EigResult e = hermitian_eigen(A);
        CHECK(e.values[0] == Approx(-1.0));
        CHECK(e.values[1] == Approx(2.0));
        CHECK(e.values[2] == Approx(5.0));
    }
}

TEST_CASE("hermitian_eigen properties on random matrices") {
    for (int n : {5, 24, 65}) {
        const HermitianMatrix A = random_hermitian(n, 1000 + n);
        const EigResult e = hermitian_eigen(A);
        REQUIRE(int(e.values.size()) == n);

        double norm_bound = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                norm_bound = std::max(norm_bound, std::abs(A.at(i, j)));
        norm_bound *= n;

        SECTION("ascending order, residuals, trace " + std::to_string(n)) {
            double trace = 0.0, sum = 0.0;
            for (int i = 0; i < n; ++i) {
                trace += A.at(i, i).real();
                sum += e.values[i];
                if (i > 0) CHECK(e.values[i] >= e.values[i - 1]);
                std::vector<complexd> v(e.vector(i), e.vector(i) + n);
                CHECK(eigen_residual(A, v, e.values[i]) <=
                      1e-12 * norm_bound);
            }
            CHECK(sum == Approx(trace).margin(1e-10 * norm_bound));
        }
        SECTION("orthonormal eigenvectors " + std::to_string(n)) {
            for (int i = 0; i < n; i += std::max(1, n / 4))
                for (int j = i; j < n; j += std::max(1, n / 4)) {
                    complexd dot = 0.0;
                    for (int k = 0; k < n; ++k)
                        dot += e.vector(i)[k] * std::conj(e.vector(j)[k]);
                    CHECK(std::abs(dot - (i == j ? 1.0 : 0.0)) < 1e-11);
                }
        }
    }
}

TEST_CASE("hermiticity defect") {
    HermitianMatrix A(2);
    A.at(0, 1) = complexd(1.0, 0.0);
    A.at(1, 0) = complexd(0.5, 0.0);
    CHECK(A.max_hermiticity_defect() == Approx(0.5));
}
