#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "quadspec/symplectic.hpp"

namespace quadspec {

/// Exponents over (x_1..x_n, xi_1..xi_n).
using MultiIndex = std::vector<int>;

/**
 * Polynomial phase-space symbol of total degree <= kMaxDegree with complex
 * coefficients. Terms with zero coefficient are dropped.
 */
class PolynomialSymbol {
public:
    static constexpr int kMaxDegree = 4;

    PolynomialSymbol() = default;
    explicit PolynomialSymbol(int n);

    static PolynomialSymbol constant(int n, Complex c);
    static PolynomialSymbol from_quadratic(const QuadraticSymbol& q);

    int n() const { return n_; }
    int degree() const;
    bool empty() const { return terms_.empty(); }
    const std::map<MultiIndex, Complex>& terms() const { return terms_; }

    /// Adds c * X^alpha. Throws InputError on wrong length or degree > kMaxDegree.
    void add_term(const MultiIndex& alpha, Complex c);
    Complex coefficient(const MultiIndex& alpha) const;

    Complex operator()(const PhasePoint& X) const;

    /// Homogeneous degree-2 part as a coefficient matrix.
    QuadraticSymbol quadratic_part() const;
    /// Throws InputError unless the symbol is homogeneous of degree 2 (or zero).
    QuadraticSymbol to_quadratic() const;

    /// Derivative with respect to coordinate k (0..2n-1).
    PolynomialSymbol derivative(int k) const;
    /// Multiplies every monomial of degree m by scale^m.
    PolynomialSymbol dilated(double scale) const;

    PolynomialSymbol& operator+=(const PolynomialSymbol& other);
    PolynomialSymbol& operator*=(Complex c);
    friend PolynomialSymbol operator+(PolynomialSymbol a, const PolynomialSymbol& b) { return a += b; }
    friend PolynomialSymbol operator-(PolynomialSymbol a, const PolynomialSymbol& b);
    friend PolynomialSymbol operator*(PolynomialSymbol a, Complex c) { return a *= c; }
    friend PolynomialSymbol operator*(Complex c, PolynomialSymbol a) { return a *= c; }
    /// Throws InputError if the product exceeds kMaxDegree.
    friend PolynomialSymbol operator*(const PolynomialSymbol& a, const PolynomialSymbol& b);

    /// Human-readable form in the parser's grammar.
    std::string to_string() const;

private:
    int n_ = 0;
    std::map<MultiIndex, Complex> terms_;
};

/// Poisson bracket {a,b} = d_xi a . d_x b - d_x a . d_xi b.
PolynomialSymbol poisson_bracket(const PolynomialSymbol& a, const PolynomialSymbol& b);

/// Gradient pairing a'.b' = sum_k d_k a d_k b over all 2n coordinates.
PolynomialSymbol gradient_pairing(const PolynomialSymbol& a, const PolynomialSymbol& b);

/**
 * Parses a polynomial in x1..xn, xi1..xin ("x", "xi" alias index 1).
 *
 * Grammar: sums and differences of products of factors; a factor is a real
 * literal, the imaginary unit `i`, a variable, or a parenthesized expression,
 * optionally raised to a non-negative integer power with `^`.
 * Example: "xi2^2 + x2^2 + i*(x2*xi1 - x1*xi2)".
 *
 * n = 0 infers the dimension from the largest variable index (at least 1).
 */
PolynomialSymbol parse_polynomial(std::string_view expr, int n = 0);

/// parse_polynomial restricted to homogeneous quadratic forms.
QuadraticSymbol parse_quadratic(std::string_view expr, int n = 0);

}  // namespace quadspec
