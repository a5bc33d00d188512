#pragma once

#include <vector>

#include "quadspec/polynomial.hpp"

namespace quadspec {

/**
 * Matrix of the h-Weyl quantization sym(x, hD_x), D = -i d/dx, in the tensor
 * Hermite basis psi_{k_1} x ... x psi_{k_n} with every k_j < N.
 *
 * Basis ordering is row-major in (k_1, ..., k_n): k_n varies fastest.
 */
struct GalerkinMatrix {
    int n = 0;
    int N = 0;
    double h = 1.0;
    ComplexMatrix A;
};

/// Largest supported matrix dimension N^n.
inline constexpr int kMaxGalerkinDimension = 4096;

/**
 * Assembles sym in the Hermite basis.
 *
 * Each monomial is Weyl-ordered by averaging over all orderings of its
 * position and momentum factors, written with ladder operators on an enlarged
 * basis of size N + 4 and cropped, so every returned entry is an exact matrix
 * element. h enters through x -> sqrt(h) x, xi -> sqrt(h) xi.
 *
 * Throws InputError for N < degree + 1, N < 2, h <= 0, or N^n above
 * kMaxGalerkinDimension.
 */
GalerkinMatrix assemble(const PolynomialSymbol& sym, int N, double h = 1.0);

/// Eigenvalues sorted by modulus, then argument. Throws NumericalError if the
/// Schur iteration does not converge.
std::vector<Complex> eigenvalues(const ComplexMatrix& A);

/// sigma_min(A - z I) by a dense SVD.
double min_singular_value(const ComplexMatrix& A, Complex z);

/// Eigenvalues of the truncation at 2N that have a partner at N within eps.
struct StableEigenvalues {
    std::vector<Complex> values;  ///< from the 2N matrix
    std::vector<double> drift;    ///< distance to the nearest N eigenvalue
};

/**
 * Truncation-doubling gate: keeps the 2N eigenvalues inside D(0, radius)
 * that moved by less than eps from the N truncation.
 */
StableEigenvalues stable_eigenvalues(const PolynomialSymbol& sym, int N, double h, double eps,
                                     double radius);

/**
 * A defective eigenvalue of algebraic multiplicity m shows up in floating
 * point as m eigenvalues spread by about eps^{1/m}; their mean is perturbed
 * only by O(eps). The oracle therefore compares cluster centroids.
 */
struct ClusterMatch {
    Complex target;
    int multiplicity = 1;
    Complex centroid;     ///< mean of the m eigenvalues nearest to target (2N)
    double error = 0.0;   ///< |centroid - target|
    double drift = 0.0;   ///< |centroid(2N) - centroid(N)|
    double spread = 0.0;  ///< largest distance of a member from the centroid (2N)
    bool stable = false;  ///< drift < eps
};

/// Mean of the m entries of `values` nearest to target, and their spread.
std::pair<Complex, double> cluster_centroid(const std::vector<Complex>& values, Complex target, int m);

/// Centroid matching of (target, multiplicity) pairs at truncations N and 2N.
std::vector<ClusterMatch> match_clusters(const PolynomialSymbol& sym, int N, double h,
                                         const std::vector<std::pair<Complex, int>>& targets, double eps);

}  // namespace quadspec
