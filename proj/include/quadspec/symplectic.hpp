#pragma once

#include <cstdint>

#include "quadspec/types.hpp"

namespace quadspec {

/**
 * Complex quadratic form q(X) = X^T Q X on R^{2n}.
 *
 * Coordinates are ordered (x_1..x_n, xi_1..xi_n). Q is stored symmetric:
 * construction symmetrizes small asymmetries and rejects large ones.
 */
class QuadraticSymbol {
public:
    /// Relative asymmetry (max-norm) that is silently symmetrized away.
    static constexpr double kSymmetryTolerance = 1e-10;

    QuadraticSymbol() = default;

    /// Throws InputError if Q is not square with even size, or if it is
    /// asymmetric beyond kSymmetryTolerance * ||Q||.
    explicit QuadraticSymbol(const ComplexMatrix& Q);
    QuadraticSymbol(const RealMatrix& re, const RealMatrix& im);

    static QuadraticSymbol zero(int n);

    int n() const { return static_cast<int>(Q_.rows()) / 2; }
    int dim() const { return static_cast<int>(Q_.rows()); }
    const ComplexMatrix& matrix() const { return Q_; }
    RealMatrix real_matrix() const { return Q_.real(); }
    RealMatrix imag_matrix() const { return Q_.imag(); }

    QuadraticSymbol real_part() const;
    QuadraticSymbol imag_part() const;

    Complex operator()(const PhasePoint& X) const;
    double norm() const { return max_norm(Q_); }

private:
    ComplexMatrix Q_;
};

/// J = [[0, -I], [I, 0]] so that X^T J Y = xi.y - x.eta.
RealMatrix symplectic_matrix(int n);

/// sigma(X, Y) = xi.y - x.eta. Throws InputError on odd or mismatched lengths.
Complex symplectic_product(const PhasePoint& X, const PhasePoint& Y);

/// Polarized form q(X;Y) = X^T Q Y.
Complex polarized_eval(const QuadraticSymbol& q, const PhasePoint& X, const PhasePoint& Y);

/// Hamilton map F of q: sigma(X, F Y) = q(X;Y) for all X, Y.
struct HamiltonMap {
    ComplexMatrix F;

    RealMatrix re() const { return F.real(); }
    RealMatrix im() const { return F.imag(); }
};

/// F = J^{-1} Q = -J Q.
HamiltonMap hamilton_map(const QuadraticSymbol& q);

/// Max residuals over random real sample pairs (absolute values).
struct HamiltonResiduals {
    double identity = 0.0;   ///< |sigma(X,FY) - q(X;Y)|
    double skew = 0.0;       ///< |sigma(X,FY) + sigma(FX,Y)|
    double real_part = 0.0;  ///< |Re F - F(Re q)|
    double imag_part = 0.0;  ///< |Im F - F(Im q)|

    double max() const;
};

HamiltonResiduals verify_hamilton_identities(const QuadraticSymbol& q, const HamiltonMap& F,
                                             int samples = 100, std::uint64_t seed = 20240901);

}  // namespace quadspec
