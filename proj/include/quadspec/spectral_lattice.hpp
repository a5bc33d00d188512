#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "quadspec/polynomial.hpp"
#include "quadspec/singular_space.hpp"

namespace quadspec {

/// Generator of the quadratic spectrum: mu = -i lambda for a selected
/// eigenvalue lambda of F, with r its algebraic multiplicity.
struct LatticeGenerator {
    Complex mu;
    int r = 1;
};

struct SpectralLattice {
    int n = 0;
    std::vector<LatticeGenerator> generators;
    /// Sum of r over generators equals n. A mismatch is a diagnostic, not an error.
    bool count_consistent = true;
};

struct LatticeOptions {
    /// Eigenvalues of F closer than this (relative to ||F||) are one cluster.
    /// A k-member cluster may spread up to 10 eps^{1/k} (defective eigenvalues).
    double cluster_radius = 1e-8;
    /// |Re mu| below this (relative to ||F||) puts mu on the imaginary axis.
    double axis_tolerance = 1e-9;
    std::size_t max_points = 1'000'000;
};

/// Both candidate readings of an unresolvable eigenvalue on the imaginary axis.
class AmbiguityError : public NumericalError {
public:
    AmbiguityError(const std::string& what, SpectralLattice without, SpectralLattice with)
        : NumericalError(what), without_(std::move(without)), with_(std::move(with)) {}

    const SpectralLattice& without_boundary() const { return without_; }
    const SpectralLattice& with_boundary() const { return with_; }

private:
    SpectralLattice without_;
    SpectralLattice with_;
};

/**
 * Selects the eigenvalues lambda of F with Re(-i lambda) > 0, plus those with
 * -i lambda on the ray i eps0 (0, inf) of the singular-space splitting.
 *
 * Throws InputError if q is not elliptic on S and AmbiguityError when an
 * eigenvalue sits on the imaginary axis with no splitting ray to decide it.
 */
SpectralLattice lattice_generators(const QuadraticSymbol& q, const SymplecticSplitting& splitting,
                                   const LatticeOptions& options = {});

/// analyze + symplectic_splitting + lattice_generators.
SpectralLattice quadratic_lattice(const QuadraticSymbol& q, const LatticeOptions& options = {});

struct LatticePoint {
    Complex value;
    std::vector<int> label;  ///< k_g per generator
};

/**
 * All sum_g (r_g + 2 k_g) mu_g with modulus < radius, sorted by modulus
 * (ties by argument, then label). Throws NumericalError past max_points.
 */
std::vector<LatticePoint> enumerate_spectrum(const SpectralLattice& lattice, double radius,
                                             std::size_t max_points = 1'000'000);

struct SpectrumValue {
    Complex value;
    int multiplicity = 1;  ///< algebraic multiplicity of the operator eigenvalue
    std::vector<std::vector<int>> labels;  ///< generator labels producing the value
    bool collision() const { return labels.size() > 1; }
};

/**
 * Distinct spectral values of q^w in D(center, radius) with algebraic
 * multiplicities, counting each generator r times with r = 1
 * (sum of (1 + 2k) mu over the n selected eigenvalues with repetition).
 */
std::vector<SpectrumValue> spectrum_with_multiplicity(const SpectralLattice& lattice, double radius,
                                                      Complex center = {},
                                                      std::size_t max_points = 1'000'000);

/// One doubly characteristic point of a model problem.
struct WellPoint {
    PhasePoint X;
    QuadraticSymbol q;
    Complex p1;
};

/**
 * Model operator near its doubly characteristic points: at each point the
 * local symbol is q_j(Y) + perturbation(Y) + h p1_j, and distinct wells are
 * decoupled.
 */
struct ModelProblem {
    std::vector<WellPoint> points;
    double h = 0.1;
    std::optional<PolynomialSymbol> perturbation;

    int n() const { return points.empty() ? 0 : points.front().q.n(); }
    /// Throws InputError on empty point list, mixed dimensions, repeated points,
    /// h <= 0, or Re q_j with a negative eigenvalue beyond tolerance.
    void validate() const;
    /// Local symbol q_j + perturbation (without the subprincipal shift).
    PolynomialSymbol local_symbol(std::size_t j) const;
};

struct LeadingEigenvalue {
    Complex z;            ///< h (lambda_{j,k} + p1_j)
    Complex lambda;       ///< lambda_{j,k}
    int multiplicity = 1; ///< N_{j,k}
    std::size_t point = 0;
    bool collision = false;
    bool near_boundary = false;  ///< |lambda + p1| within tolerance of C
};

/// Leading-order eigenvalues of the model problem in D(0, C h).
std::vector<LeadingEigenvalue> low_lying_eigenvalues(const ModelProblem& problem, double C,
                                                     const LatticeOptions& options = {});

}  // namespace quadspec
