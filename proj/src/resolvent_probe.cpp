#include "quadspec/resolvent_probe.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>

#include "quadspec/hermite_galerkin.hpp"
#include "quadspec/kernels.hpp"

namespace quadspec {

double subelliptic_bound(double h, int k0, double modulus) {
    const double denom = 2.0 * k0 + 1.0;
    return std::pow(h, 2.0 * k0 / denom) * std::pow(modulus, 1.0 / denom);
}

void OmegaRegion::validate() const {
    if (k0 < 0) throw InputError("k0 must be non-negative");
    if (!(C >= 1.0)) throw InputError("region constant C must be >= 1");
    if (!(C0 > 0.0)) throw InputError("outer radius C0 must be positive");
    if (!(h > 0.0)) throw InputError("h must be positive");
}

double OmegaRegion::real_part_limit(double r) const { return subelliptic_bound(h, k0, r) / C; }

bool OmegaRegion::contains(Complex z) const {
    const double r = std::abs(z);
    return C * h <= r && r <= C0 && z.real() <= real_part_limit(r);
}

std::vector<Complex> omega_grid(const OmegaRegion& region, const ProbeGrid& grid) {
    region.validate();
    if (region.empty()) throw InputError("region is empty: C h exceeds C0");
    if (grid.radii < 1 || grid.angles < 1) throw InputError("probe grid needs at least one radius and angle");
    std::vector<Complex> out;
    const double r0 = region.C * region.h;
    for (int i = 0; i < grid.radii; ++i) {
        const double t = grid.radii == 1 ? 0.0 : static_cast<double>(i) / (grid.radii - 1);
        const double r = r0 * std::pow(region.C0 / r0, t);
        const double c = std::clamp(region.real_part_limit(r) / r, -1.0, 1.0);
        // Nudged inward so the boundary samples satisfy the inequality after rounding.
        const double theta0 = std::min(std::acos(c) + 1e-12, std::numbers::pi);
        const double span = 2.0 * (std::numbers::pi - theta0);
        for (int k = 0; k < grid.angles; ++k) {
            const double s = grid.angles == 1 ? 0.5 : static_cast<double>(k) / (grid.angles - 1);
            out.push_back(std::polar(r, theta0 + s * span));
        }
    }
    return out;
}

int ProbeResult::converged_count() const {
    return static_cast<int>(std::count_if(samples.begin(), samples.end(),
                                          [](const ProbeSample& s) { return s.converged; }));
}

std::vector<ComplexMatrix> model_operator_blocks(const ModelProblem& problem, int N) {
    problem.validate();
    std::vector<ComplexMatrix> blocks;
    for (std::size_t j = 0; j < problem.points.size(); ++j) {
        ComplexMatrix A = assemble(problem.local_symbol(j), N, problem.h).A;
        A.diagonal().array() += problem.h * problem.points[j].p1;
        blocks.push_back(std::move(A));
    }
    return blocks;
}

namespace {

std::vector<double> sigma_over_blocks(const std::vector<ComplexMatrix>& blocks,
                                      const std::vector<Complex>& zs) {
    std::vector<double> out(zs.size(), std::numeric_limits<double>::infinity());
    for (const auto& A : blocks) {
        const auto s = kernels::sigma_min_grid(A, zs);
        for (std::size_t i = 0; i < zs.size(); ++i) out[i] = std::min(out[i], s[i]);
    }
    return out;
}

bool gate(double coarse, double fine) {
    return std::abs(coarse - fine) <= kTruncationGate * fine;
}

}  // namespace

std::vector<ProbeSample> probe_points(const ModelProblem& problem, const std::vector<Complex>& zs,
                                      int N, int k0) {
    const auto coarse = sigma_over_blocks(model_operator_blocks(problem, N), zs);
    const auto fine = sigma_over_blocks(model_operator_blocks(problem, 2 * N), zs);
    std::vector<ProbeSample> out;
    for (std::size_t i = 0; i < zs.size(); ++i) {
        ProbeSample s;
        s.z = zs[i];
        s.sigma_coarse = coarse[i];
        s.sigma_min = fine[i];
        s.bound = subelliptic_bound(problem.h, k0, std::abs(zs[i]));
        s.ratio = s.sigma_min / s.bound;
        s.converged = gate(coarse[i], fine[i]);
        out.push_back(s);
    }
    return out;
}

int problem_k0(const ModelProblem& problem) {
    std::vector<std::optional<int>> ks;
    for (const auto& p : problem.points) ks.push_back(k0_index(hamilton_map(p.q)));
    const auto k0 = combined_k0(ks);
    if (!k0) throw InputError("subelliptic probe needs every well to have a trivial singular space");
    return *k0;
}

ProbeResult subelliptic_probe(const ModelProblem& problem, const OmegaRegion& region,
                              const ProbeGrid& grid, int N) {
    ModelProblem local = problem;
    local.h = region.h;
    local.validate();
    const int k0 = problem_k0(local);
    if (k0 != region.k0) {
        throw InputError("region k0 = " + std::to_string(region.k0) + " but the problem has k0 = " +
                         std::to_string(k0));
    }
    const auto zs = omega_grid(region, grid);

    ProbeResult result;
    result.samples = probe_points(local, zs, N, k0);
    result.h = region.h;
    result.N = N;
    result.k0 = k0;
    std::string canonical;
    for (std::size_t j = 0; j < local.points.size(); ++j) {
        char buf[80];
        std::snprintf(buf, sizeof buf, "|p1=%.17g,%.17g|", local.points[j].p1.real(), local.points[j].p1.imag());
        canonical += local.local_symbol(j).to_string() + buf;
    }
    result.symbol_hash = symbol_hash(canonical);

    result.min_ratio = std::numeric_limits<double>::infinity();
    for (const auto& s : result.samples) {
        if (!s.converged) continue;
        result.min_ratio = std::min(result.min_ratio, s.ratio);
        if (!(s.ratio > 0.0) && !result.witness) result.witness = s.z;
    }
    if (result.converged_count() == 0) result.min_ratio = 0.0;
    return result;
}

std::vector<Complex> admissible_points(const ModelProblem& problem, double C, double separation,
                                       int rings, int per_ring) {
    problem.validate();
    std::vector<Complex> excluded;
    for (const auto& p : problem.points) {
        const auto values = spectrum_with_multiplicity(quadratic_lattice(p.q), C + separation, -p.p1);
        for (const auto& v : values) excluded.push_back(v.value + p.p1);
    }
    std::vector<Complex> out;
    for (int i = 0; i < rings; ++i) {
        const double r = C * (i + 0.5) / rings;
        for (int k = 0; k < per_ring; ++k) {
            const Complex z = std::polar(r, 2.0 * std::numbers::pi * k / per_ring);
            const bool ok = std::all_of(excluded.begin(), excluded.end(),
                                        [&](Complex e) { return std::abs(z - e) >= separation; });
            if (ok) out.push_back(z);
        }
    }
    return out;
}

OrderHResult order_h_probe(const ModelProblem& problem, const std::vector<Complex>& zs,
                           const std::vector<double>& hs, int N) {
    OrderHResult result;
    for (double h : hs) {
        ModelProblem local = problem;
        local.h = h;
        std::vector<Complex> scaled;
        for (Complex z : zs) scaled.push_back(h * z);
        const auto coarse = sigma_over_blocks(model_operator_blocks(local, N), scaled);
        const auto fine = sigma_over_blocks(model_operator_blocks(local, 2 * N), scaled);
        for (std::size_t i = 0; i < zs.size(); ++i) {
            OrderHSample s;
            s.h = h;
            s.z = zs[i];
            s.sigma_min = fine[i];
            s.K = fine[i] > 0.0 ? h / fine[i] : std::numeric_limits<double>::infinity();
            s.converged = gate(coarse[i], fine[i]);
            if (s.converged) result.max_K = std::max(result.max_K, s.K);
            result.samples.push_back(s);
        }
    }
    return result;
}

SectorCheck check_sector_condition(const PolynomialSymbol& remainder, double radius, int samples,
                                   std::uint64_t seed) {
    SectorCheck out;
    const int dim = 2 * remainder.n();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int s = 0; s < samples; ++s) {
        PhasePoint Y(dim);
        for (int k = 0; k < dim; ++k) Y(k) = gauss(rng);
        const double len = Y.norm();
        if (len == 0.0) continue;
        Y *= radius * std::pow(unit(rng), 1.0 / dim) / len;
        const Complex r = remainder(Y);
        ++out.samples;
        if (std::abs(r) == 0.0) continue;
        const double angle = std::abs(std::arg(r));
        out.max_angle = std::max(out.max_angle, angle);
        if (!(r.real() > 0.0)) out.inside = false;
    }
    return out;
}

std::string symbol_hash(const std::string& canonical) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : canonical) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace quadspec
