#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "quadspec/kernels.hpp"
#include "quadspec/polynomial.hpp"

// Everything here uses the 2 pi normalized Weyl quantization
//   (a^w u)(x) = int e^{2 i pi (x-y) xi} a((x+y)/2, xi) u(y) dy dxi,
// never the D = -i d/dx convention of hermite_galerkin. Grid operations are
// one-dimensional (phase space R^2).
namespace quadspec::wick {

using kernels::UniformGrid;

/// Samples of u on a uniform grid over [-L, L].
struct GridFunction {
    UniformGrid grid;
    std::vector<Complex> values;

    /// Throws InputError if M < 16, sizes disagree, or the mass beyond
    /// |x| > 0.9 L exceeds 1e-8 of the total.
    void validate() const;
    double norm_sq() const;
};

/// Samples of a function on the square grid (y, eta), row-major in y.
struct PhaseGridFunction {
    UniformGrid grid;
    std::vector<Complex> values;

    Complex at(int p, int q) const { return values[static_cast<std::size_t>(p) * grid.count + q]; }
    double norm_sq() const;
};

/// Largest grid step that resolves the Gaussian window.
inline constexpr double kMaxStep = 0.25;

/// Wu(y, eta) by the trapezoid rule. Throws InputError on under-resolved grids.
PhaseGridFunction wave_packet_transform(const GridFunction& u, const UniformGrid& phase);

/// Phase-space samples a(y_p, eta_q) in the layout of PhaseGridFunction.
std::vector<Complex> sample_symbol(const std::function<Complex(double, double)>& a, const UniformGrid& phase);

/// (a^Wick u, u) = int a(Y) |Wu(Y)|^2 dY (trapezoid on the phase grid).
Complex wick_expectation(std::span<const Complex> a, const PhaseGridFunction& Wu);

/// Normalized Hermite function psi_k(x) = (2^k k! sqrt(pi))^{-1/2} H_k(x) e^{-x^2/2}.
double hermite_function(int k, double x);

/// sum_k c_k psi_k sampled on the grid.
GridFunction hermite_combination(const std::vector<Complex>& coefficients, const UniformGrid& grid);

/// Variance 1/(4 pi) per coordinate of the density 2^n e^{-2 pi |Y|^2}.
inline constexpr double kSmoothingVariance = 0.25 / 3.14159265358979323846;

/**
 * Weyl symbol of a^Wick for a of degree <= 2: a + tr(A)/(4 pi), where tr(A)
 * is the sum of the coefficients of the squared monomials.
 * Throws InputError on degree > 2.
 */
PolynomialSymbol wick_to_weyl_quadratic(const PolynomialSymbol& a);

/// Weyl symbol of a^Wick for any polynomial: a convolved with the Gaussian,
/// computed from its moments.
PolynomialSymbol gaussian_smoothing(const PolynomialSymbol& a);

/// Trapezoid quadrature of int a(X + Y) 2 e^{-2 pi |Y|^2} dY (n = 1).
Complex smoothed_value_by_quadrature(const PolynomialSymbol& a, double x, double xi, int nodes = 161);

/**
 * Matrix of the 2 pi normalized Weyl quantization of a 1-D polynomial symbol
 * in the Hermite basis of y = sqrt(2 pi) x, first N functions.
 */
ComplexMatrix weyl_matrix(const PolynomialSymbol& sym, int N);

/// weyl_matrix(gaussian_smoothing(sym), N)
ComplexMatrix wick_matrix(const PolynomialSymbol& sym, int N);

/// sup over real unit T of |b''(X) T^2| for a symbol of degree <= 2.
double gamma2(const PolynomialSymbol& b);

struct CompositionReport {
    int N = 0;
    int block = 0;
    double remainder_norm = 0.0;          ///< ||S|| on the block, basis N
    double remainder_norm_doubled = 0.0;  ///< same block, basis 2N
    double drift = 0.0;                   ///< relative change between the two
    double gamma2_b = 0.0;
    double a_block_norm = 0.0;            ///< ||a^Wick|| on the block
    double empirical_constant = 0.0;      ///< remainder / (a_block_norm * gamma2_b)
};

/**
 * S = a^Wick b^Wick - [ab - a'.b'/(4 pi) + {a,b}/(4 i pi)]^Wick on the first
 * `block` Hermite functions, evaluated with bases of size N and 2N.
 * a and b must be 1-D of degree <= 2.
 */
CompositionReport composition_check(const PolynomialSymbol& a, const PolynomialSymbol& b, int N,
                                    int block);

struct DemoRow {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

/// The invariant battery behind `quadspec wick --demo`.
std::vector<DemoRow> run_demo(std::uint64_t seed);

}  // namespace quadspec::wick
