#include <doctest.h>

#include <numbers>

#include "oracles.hpp"
#include "quadspec/hermite_galerkin.hpp"
#include "quadspec/models.hpp"

using namespace quadspec;

TEST_SUITE("hermite_galerkin") {

TEST_CASE("position powers match Gauss-Hermite quadrature") {
    for (int p = 1; p <= 4; ++p) {
        const std::string expr = "x^" + std::to_string(p);
        const auto G = assemble(parse_polynomial(expr), 10);
        for (int j = 0; j < 10; ++j) {
            for (int k = 0; k < 10; ++k) {
                const double m = oracle::position_moment(j, k, p);
                // Entries grow like (j + k)^{p/2}; the quadrature loses ~1e-12 relative to that.
                CHECK(std::abs(G.A(j, k) - m) < 1e-12 * std::pow(1.0 + j + k, 0.5 * p));
            }
        }
    }
}

TEST_CASE("momentum is -i d/dx: the oscillator is diagonal with h (2k + 1)") {
    for (double h : {1.0, 0.1}) {
        const auto G = assemble(parse_polynomial("x^2 + xi^2"), 12, h);
        for (int j = 0; j < 12; ++j) {
            for (int k = 0; k < 12; ++k) {
                const Complex expected = j == k ? h * (2.0 * k + 1.0) : 0.0;
                CHECK(std::abs(G.A(j, k) - expected) < 1e-12);
            }
        }
    }
    // <psi_0 | xi | psi_1> = -i <psi_0 | psi_1'> = -i / sqrt(2)
    const auto P = assemble(parse_polynomial("xi"), 4);
    CHECK(std::abs(P.A(0, 1) - Complex(0.0, -1.0 / std::sqrt(2.0))) < 1e-14);
    CHECK(std::abs(P.A(1, 0) - Complex(0.0, 1.0 / std::sqrt(2.0))) < 1e-14);
}

TEST_CASE("Weyl symmetrization: x xi is (x D + D x)/2") {
    const auto XP = assemble(parse_polynomial("x*xi"), 8).A;
    const auto X = assemble(parse_polynomial("x"), 12).A;
    const auto P = assemble(parse_polynomial("xi"), 12).A;
    const ComplexMatrix sym = (0.5 * (X * P + P * X)).topLeftCorner(8, 8);
    CHECK((XP - sym).norm() < 1e-12);
    // Real symbol: Weyl quantization is self-adjoint.
    CHECK((XP - XP.adjoint()).norm() < 1e-12);
}

TEST_CASE("tensor basis ordering puts the last index fastest") {
    const auto G = assemble(parse_polynomial("x2", 2), 3);
    // Row index k1 * 3 + k2; x2 couples k2 -> k2 +- 1 only.
    CHECK(std::abs(G.A(0, 1) - 1.0 / std::sqrt(2.0)) < 1e-14);
    CHECK(std::abs(G.A(0, 3)) < 1e-14);
    const auto H = assemble(parse_polynomial("x1", 2), 3);
    CHECK(std::abs(H.A(0, 3) - 1.0 / std::sqrt(2.0)) < 1e-14);
    CHECK(std::abs(H.A(0, 1)) < 1e-14);
}

TEST_CASE("input limits") {
    const auto sym = parse_polynomial("x^4 + xi^2");
    CHECK_THROWS_AS(assemble(sym, 4), InputError);
    CHECK_NOTHROW(assemble(sym, 5));
    CHECK_THROWS_AS(assemble(sym, 8, 0.0), InputError);
    CHECK_THROWS_AS(assemble(parse_polynomial(models::harmonic(3), 3), 17), InputError);
    CHECK_NOTHROW(assemble(parse_polynomial(models::harmonic(3), 3), 16));
}

TEST_CASE("rotated oscillator converges under truncation doubling") {
    const auto st = stable_eigenvalues(parse_polynomial(models::davies()), 32, 1.0, 1e-6, 8.0);
    REQUIRE(st.values.size() == 4);
    for (int k = 0; k < 4; ++k) {
        CHECK(std::abs(st.values[k] - std::polar(2.0 * k + 1.0, std::numbers::pi / 4)) < 1e-8);
    }
}

TEST_CASE("sigma_min of a normal operator is the spectral distance") {
    const auto A = assemble(parse_polynomial("x^2 + xi^2"), 16).A;
    CHECK(std::abs(min_singular_value(A, 2.0) - 1.0) < 1e-12);
    CHECK(std::abs(min_singular_value(A, Complex(3.0, 0.5)) - 0.5) < 1e-12);
}

TEST_CASE("defective eigenvalues: cluster centroids are accurate") {
    const auto sym = parse_polynomial(models::kfp(2), 2);
    const std::vector<std::pair<Complex, int>> targets{{1.0, 1}, {2.0, 2}, {3.0, 3}, {4.0, 4}};
    const auto m = match_clusters(sym, 8, 1.0, targets, 1e-6);
    REQUIRE(m.size() == 4);
    for (const auto& c : m) {
        CHECK(c.stable);
        CHECK(c.error < 1e-8);
    }
    // The raw eigenvalues of the size-4 block are far less accurate than the centroid.
    CHECK(m[3].spread > 100.0 * m[3].error);
}

TEST_CASE("cluster_centroid picks the nearest members") {
    const std::vector<Complex> v{0.0, 1.0, 1.1, 0.9, 5.0};
    const auto [c, spread] = cluster_centroid(v, 1.0, 3);
    CHECK(std::abs(c - 1.0) < 1e-14);
    CHECK(std::abs(spread - 0.1) < 1e-14);
    CHECK_THROWS(cluster_centroid(v, 1.0, 6));
}

}
