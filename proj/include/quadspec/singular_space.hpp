#pragma once

#include <optional>
#include <vector>

#include "quadspec/symplectic.hpp"

namespace quadspec {

/// Rank decisions: singular values below (2n) * eps * sigma_max * factor are zero.
struct RankOptions {
    double factor = 1e3;
};

struct EllipticityOptions {
    int theta_samples = 360;
    /// Relative threshold (against ||q|_S||) for definiteness and for real roots.
    double tolerance = 1e-9;
};

struct EllipticityVerdict {
    bool elliptic = true;
    /// Best definiteness margin found (relative); 0 when not elliptic.
    double margin = 0.0;
};

struct SingularSpaceReport {
    RealMatrix basis;               ///< 2n x d, orthonormal columns spanning S
    int dim = 0;                    ///< d
    std::optional<int> k0;          ///< empty ("not reached") when S != {0}
    std::vector<int> partial_dims;  ///< dim of the k-th partial kernel intersection, k = 0..2n-1
    std::optional<EllipticityVerdict> elliptic;  ///< filled by analyze()
};

/**
 * Singular space of a Hamilton map: the real kernel of the stack
 * [ReF; ReF ImF; ...; ReF ImF^{2n-1}].
 *
 * Each block is computed from ReF and ImF normalized to unit max-norm, which
 * leaves every kernel unchanged. `options.factor` must be positive.
 */
SingularSpaceReport singular_space(const HamiltonMap& F, const RankOptions& options = {});

/// Smallest k with a trivial partial intersection; empty when S != {0}.
std::optional<int> k0_index(const HamiltonMap& F, const RankOptions& options = {});

/// Problem-level index: max over points. Empty if any point has S != {0}.
std::optional<int> combined_k0(const std::vector<std::optional<int>>& indices);

/// Coefficient matrix of q restricted to span(basis): basis^T Q basis.
ComplexMatrix restricted_form(const QuadraticSymbol& q, const RealMatrix& basis);

/**
 * Whether q|_S has no nonzero real zero.
 *
 * With M = Re M + i Im M the restricted matrix, checks that Re M and Im M have
 * no common null direction and that some combination cos(t) Re M + sin(t) Im M
 * is definite, sampling t over [0, pi). For d = 2 a negative sweep is
 * confirmed by solving the restricted form exactly on the unit circle.
 */
EllipticityVerdict elliptic_on_S(const QuadraticSymbol& q, const SingularSpaceReport& report,
                                 const EllipticityOptions& options = {});

/// singular_space + elliptic_on_S.
SingularSpaceReport analyze(const QuadraticSymbol& q, const RankOptions& rank = {},
                            const EllipticityOptions& ellipticity = {});

/**
 * Coefficient matrix of X -> sum_{l=0}^{k0} Re q((Im F)^l X).
 *
 * Throws InputError when k0 is empty (S != {0}) and NumericalError if the
 * assembled matrix is not positive definite.
 */
RealMatrix subelliptic_gram(const QuadraticSymbol& q, std::optional<int> k0);

struct SymplecticSplitting {
    RealMatrix basis_complement;  ///< 2n x (2n-d), spans the sigma-orthogonal complement of S
    RealMatrix basis_S;           ///< 2n x d
    ComplexMatrix q1;             ///< q restricted to the complement (in the basis above); 0x0 when S = R^{2n}
    RealMatrix q2;                ///< real d x d, i q2 = q|_S; empty when d = 0
    std::optional<int> epsilon0;  ///< sign of q2; undefined when d = 0
    std::vector<double> frequencies;  ///< lambda_j with q2 ~ eps0 sum (lambda_j/2)(x^2+xi^2)

    /// Coordinates (c', c'') with X = basis_complement c' + basis_S c''.
    std::pair<RealVector, RealVector> decompose(const RealVector& X) const;
};

/**
 * Splits R^{2n} = S^{sigma-perp} (+) S and restricts q to each part.
 *
 * Throws NumericalError when d is odd, when q|_S is not purely imaginary, or
 * when sigma restricted to S is degenerate.
 */
SymplecticSplitting symplectic_splitting(const QuadraticSymbol& q, const SingularSpaceReport& report);

}  // namespace quadspec
