#include <doctest.h>

#include <random>

#include "quadspec/polynomial.hpp"

using namespace quadspec;

namespace {

PolynomialSymbol random_quadratic(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    PolynomialSymbol p(n);
    for (int i = 0; i < 2 * n; ++i) {
        for (int j = i; j < 2 * n; ++j) {
            MultiIndex a(2 * n, 0);
            ++a[i];
            ++a[j];
            p.add_term(a, Complex(g(rng), g(rng)));
        }
    }
    return p;
}

double max_coefficient(const PolynomialSymbol& p) {
    double m = 0.0;
    for (const auto& [a, c] : p.terms()) m = std::max(m, std::abs(c));
    return m;
}

}  // namespace

TEST_SUITE("polynomial") {

TEST_CASE("parser reads the Fokker-Planck model") {
    const auto p = parse_polynomial("xi2^2 + x2^2 + i*(x2*xi1 - x1*xi2)");
    CHECK(p.n() == 2);
    CHECK(p.degree() == 2);
    CHECK(p.coefficient({0, 0, 0, 2}) == Complex(1.0));
    CHECK(p.coefficient({0, 2, 0, 0}) == Complex(1.0));
    CHECK(p.coefficient({0, 1, 1, 0}) == Complex(0.0, 1.0));
    CHECK(p.coefficient({1, 0, 0, 1}) == Complex(0.0, -1.0));

    const auto q = p.to_quadratic();
    // x2*xi1 splits symmetrically over Q(1,2) and Q(2,1).
    CHECK(q.matrix()(1, 2) == Complex(0.0, 0.5));
    CHECK(q.matrix()(2, 1) == Complex(0.0, 0.5));
    CHECK(q.matrix()(3, 3) == Complex(1.0));
}

TEST_CASE("parser handles powers, parentheses, literals and unary minus") {
    const auto p = parse_polynomial("-(x - 2*xi)^2 + 0.5e1*x^3 - i", 1);
    CHECK(p.coefficient({2, 0}) == Complex(-1.0));
    CHECK(p.coefficient({1, 1}) == Complex(4.0));
    CHECK(p.coefficient({0, 2}) == Complex(-4.0));
    CHECK(p.coefficient({3, 0}) == Complex(5.0));
    CHECK(p.coefficient({0, 0}) == Complex(0.0, -1.0));
}

TEST_CASE("parser rejects malformed input") {
    CHECK_THROWS_AS(parse_polynomial("x^5"), InputError);
    CHECK_THROWS_AS(parse_polynomial("x3", 2), InputError);
    CHECK_THROWS_AS(parse_polynomial("y + 1"), InputError);
    CHECK_THROWS_AS(parse_polynomial("(x + 1"), InputError);
    CHECK_THROWS_AS(parse_polynomial(""), InputError);
    CHECK_THROWS_AS(parse_quadratic("x^2 + x"), InputError);
}

TEST_CASE("to_string round-trips through the parser") {
    std::mt19937_64 rng(21);
    for (int n = 1; n <= 3; ++n) {
        auto p = random_quadratic(n, rng);
        p.add_term(MultiIndex(2 * n, 0), Complex(0.25, -3.0));
        const auto back = parse_polynomial(p.to_string(), n);
        CHECK(max_coefficient(back - p) <= 1e-15 * max_coefficient(p));
    }
}

TEST_CASE("Poisson bracket: canonical pair, antisymmetry, Jacobi identity") {
    const auto x = parse_polynomial("x", 1);
    const auto xi = parse_polynomial("xi", 1);
    CHECK(poisson_bracket(xi, x).coefficient({0, 0}) == Complex(1.0));
    CHECK(poisson_bracket(x, xi).coefficient({0, 0}) == Complex(-1.0));

    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 1 + trial % 3;
        const auto a = random_quadratic(n, rng);
        const auto b = random_quadratic(n, rng);
        const auto c = random_quadratic(n, rng);
        CHECK(max_coefficient(poisson_bracket(a, b) + poisson_bracket(b, a)) <= 1e-13);
        const auto jacobi = poisson_bracket(a, poisson_bracket(b, c)) + poisson_bracket(b, poisson_bracket(c, a)) +
                            poisson_bracket(c, poisson_bracket(a, b));
        CHECK(max_coefficient(jacobi) <= 1e-12);
    }
}

TEST_CASE("derivative, dilation and evaluation agree") {
    const auto p = parse_polynomial("x^3 + 2*x*xi - xi^2 + 1", 1);
    const auto dx = p.derivative(0);
    CHECK(dx.coefficient({2, 0}) == Complex(3.0));
    CHECK(dx.coefficient({0, 1}) == Complex(2.0));
    const auto d = p.dilated(2.0);
    PhasePoint X(2);
    X << 0.3, -0.7;
    const PhasePoint X2 = 2.0 * X;
    CHECK(std::abs(d(X) - p(X2)) <= 1e-14);
    CHECK_THROWS_AS(parse_polynomial("x^3", 1) * parse_polynomial("x^2", 1), InputError);
}

TEST_CASE("quadratic matrix and polynomial forms evaluate identically") {
    std::mt19937_64 rng(23);
    std::normal_distribution<double> g;
    for (int n = 1; n <= 3; ++n) {
        const auto p = random_quadratic(n, rng);
        const auto q = p.to_quadratic();
        PhasePoint X(2 * n);
        for (int k = 0; k < 2 * n; ++k) X(k) = g(rng);
        CHECK(std::abs(p(X) - q(X)) <= 1e-12 * (1.0 + std::abs(p(X))));
        const auto back = PolynomialSymbol::from_quadratic(q);
        CHECK(max_coefficient(back - p) <= 1e-14);
    }
}

}
