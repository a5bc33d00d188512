#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "quadspec/spectral_lattice.hpp"

namespace quadspec {

/// h^{2k0/(2k0+1)} |z|^{1/(2k0+1)}
double subelliptic_bound(double h, int k0, double modulus);

/**
 * { z : Re z <= (1/C) h^{2k0/(2k0+1)} |z|^{1/(2k0+1)},  C h <= |z| <= C0 }.
 */
struct OmegaRegion {
    int k0 = 1;
    double C = 4.0;
    double C0 = 0.5;
    double h = 0.01;

    /// Throws InputError unless k0 >= 0, C >= 1, C0 > 0, h > 0.
    void validate() const;
    bool contains(Complex z) const;
    bool empty() const { return C * h > C0; }
    /// Largest admissible Re z at modulus r.
    double real_part_limit(double r) const;
};

/// Log-radial grid: `radii` moduli in [Ch, C0] times `angles` points spread
/// over the arc of each circle that lies inside the region.
struct ProbeGrid {
    int radii = 8;
    int angles = 16;
};

std::vector<Complex> omega_grid(const OmegaRegion& region, const ProbeGrid& grid = {});

struct ProbeSample {
    Complex z;
    double sigma_min = 0.0;  ///< at the fine truncation 2N
    double sigma_coarse = 0.0;
    double bound = 0.0;
    double ratio = 0.0;
    bool converged = false;
};

struct ProbeResult {
    std::vector<ProbeSample> samples;
    double min_ratio = 0.0;           ///< over converged samples
    std::optional<Complex> witness;   ///< converged sample with ratio <= 0
    double h = 0.0;
    int N = 0;
    int k0 = 0;
    std::string symbol_hash;
    int converged_count() const;
    bool passed() const { return !witness && converged_count() > 0; }
};

/// Relative change allowed between truncations N and 2N for a trusted sample.
inline constexpr double kTruncationGate = 0.05;

/**
 * Galerkin matrices of the h-quantized model operator, one block per well:
 * assemble(local symbol, N, h) + h p1_j.
 */
std::vector<ComplexMatrix> model_operator_blocks(const ModelProblem& problem, int N);

/// sigma_min(P - z) = min over wells, evaluated at truncations N and 2N.
std::vector<ProbeSample> probe_points(const ModelProblem& problem, const std::vector<Complex>& zs,
                                      int N, int k0);

/// k0 of the problem: max over wells. Throws InputError if some S_j != {0}.
int problem_k0(const ModelProblem& problem);

/**
 * Samples sigma_min(P - z) / (h^{2k0/(2k0+1)} |z|^{1/(2k0+1)}) over omega_grid.
 * Throws InputError if the region is empty or a well has S_j != {0}.
 */
ProbeResult subelliptic_probe(const ModelProblem& problem, const OmegaRegion& region,
                              const ProbeGrid& grid, int N);

struct OrderHSample {
    double h = 0.0;
    Complex z;               ///< spectral parameter in units of h
    double sigma_min = 0.0;  ///< of P - h z at 2N
    double K = 0.0;          ///< h / sigma_min
    bool converged = false;
};

struct OrderHResult {
    std::vector<OrderHSample> samples;
    double max_K = 0.0;  ///< over converged samples
};

/// Admissible z in D(0, C): at least `separation` away from every lambda_{j,k} + p1_j.
std::vector<Complex> admissible_points(const ModelProblem& problem, double C, double separation,
                                       int rings = 6, int per_ring = 24);

/**
 * Checks h ||u|| <= K ||(P - h z) u|| for each h and z by computing
 * sigma_min(P - h z); reports the largest K = h / sigma_min needed.
 */
OrderHResult order_h_probe(const ModelProblem& problem, const std::vector<Complex>& zs,
                           const std::vector<double>& hs, int N);

/// Range of the perturbation on a sample ball: nonzero values must lie in a
/// closed sector inside Re z > 0.
struct SectorCheck {
    bool inside = true;
    double max_angle = 0.0;  ///< largest |arg r(Y)| seen
    int samples = 0;
};

SectorCheck check_sector_condition(const PolynomialSymbol& remainder, double radius, int samples,
                                   std::uint64_t seed);

/// FNV-1a of the canonical text of a symbol; stable across runs and builds.
std::string symbol_hash(const std::string& canonical);

}  // namespace quadspec
