#include <doctest.h>

#include <random>

#include "quadspec/symplectic.hpp"

using namespace quadspec;

namespace {

QuadraticSymbol random_symbol(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    RealMatrix a(2 * n, 2 * n), b(2 * n, 2 * n);
    for (int i = 0; i < 2 * n; ++i) {
        for (int j = 0; j < 2 * n; ++j) {
            a(i, j) = g(rng);
            b(i, j) = g(rng);
        }
    }
    return QuadraticSymbol(RealMatrix(a + a.transpose()), RealMatrix(b + b.transpose()));
}

PhasePoint random_point(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    PhasePoint X(dim);
    for (int k = 0; k < dim; ++k) X(k) = g(rng);
    return X;
}

}  // namespace

TEST_SUITE("symplectic") {

TEST_CASE("symplectic form follows the xi.y - x.eta convention") {
    PhasePoint X(2), Y(2);
    X << 1.0, 0.0;  // x = 1
    Y << 0.0, 1.0;  // eta = 1
    CHECK(symplectic_product(X, Y) == Complex(-1.0));
    CHECK(symplectic_product(Y, X) == Complex(1.0));

    const RealMatrix J = symplectic_matrix(2);
    CHECK(J(0, 2) == -1.0);
    CHECK(J(2, 0) == 1.0);
    CHECK((J * J + RealMatrix::Identity(4, 4)).norm() == 0.0);
}

TEST_CASE("polarization matches the parallelogram formula") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + trial % 3;
        const auto q = random_symbol(n, rng);
        const auto X = random_point(2 * n, rng);
        const auto Y = random_point(2 * n, rng);
        const PhasePoint s = X + Y;
        const PhasePoint d = X - Y;
        const Complex oracle = (q(s) - q(d)) / 4.0;
        CHECK(std::abs(polarized_eval(q, X, Y) - oracle) <= 1e-12 * (1.0 + std::abs(oracle)));
    }
}

TEST_CASE("Hamilton map is traceless and J F is the coefficient matrix") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 1 + trial % 4;
        const auto q = random_symbol(n, rng);
        const auto F = hamilton_map(q);
        CHECK(std::abs(F.F.trace()) <= 1e-12 * q.norm() * n);
        const ComplexMatrix JF = symplectic_matrix(n).cast<Complex>() * F.F;
        CHECK((JF - q.matrix()).cwiseAbs().maxCoeff() <= 1e-14 * q.norm());
        CHECK(verify_hamilton_identities(q, F).max() <= 1e-11 * q.norm());
    }
}

TEST_CASE("sigma(X, F Y) reproduces q(X;Y) for the oscillator by hand") {
    // q = x^2 + xi^2: F maps (x, xi) to (xi, -x) up to the convention's sign.
    const QuadraticSymbol q(RealMatrix::Identity(2, 2), RealMatrix::Zero(2, 2));
    const auto F = hamilton_map(q);
    PhasePoint e1(2), e2(2);
    e1 << 1.0, 0.0;
    e2 << 0.0, 1.0;
    CHECK(symplectic_product(e1, F.F * e1) == Complex(1.0));
    CHECK(symplectic_product(e2, F.F * e2) == Complex(1.0));
    CHECK(symplectic_product(e1, F.F * e2) == Complex(0.0));
}

TEST_CASE("construction validates shape, symmetry and finiteness") {
    CHECK_THROWS_AS(QuadraticSymbol(ComplexMatrix::Identity(3, 3)), InputError);
    CHECK_THROWS_AS(QuadraticSymbol(ComplexMatrix::Zero(0, 0)), InputError);
    ComplexMatrix asym = ComplexMatrix::Identity(2, 2);
    asym(0, 1) = 1.0;
    CHECK_THROWS_AS(QuadraticSymbol{asym}, InputError);
    ComplexMatrix tiny = ComplexMatrix::Identity(2, 2);
    tiny(0, 1) = 1e-14;
    const QuadraticSymbol q(tiny);
    CHECK(q.matrix()(0, 1) == q.matrix()(1, 0));
    ComplexMatrix bad = ComplexMatrix::Identity(2, 2);
    bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(QuadraticSymbol{bad}, InputError);
    PhasePoint odd(3);
    CHECK_THROWS_AS(symplectic_product(odd, odd), InputError);
}

TEST_CASE("real and imaginary parts split the Hamilton map") {
    std::mt19937_64 rng(13);
    const auto q = random_symbol(2, rng);
    const auto F = hamilton_map(q);
    CHECK((hamilton_map(q.real_part()).F.real() - F.re()).norm() == 0.0);
    CHECK((hamilton_map(q.imag_part()).F.real() - F.im()).norm() == 0.0);
}

}
