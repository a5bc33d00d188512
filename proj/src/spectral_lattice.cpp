#include "quadspec/spectral_lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include <Eigen/Eigenvalues>

namespace quadspec {

namespace {

struct Cluster {
    Complex sum;
    int count = 0;
    Complex center() const { return sum / static_cast<double>(count); }
};

// A Jordan block of size k splits its eigenvalue by about eps^{1/k} ||F||, so
// the merge radius for a k-member cluster is widened to 10 eps^{1/k}.
double merge_radius(int members, double base) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    return std::max(base, 10.0 * std::pow(eps, 1.0 / members));
}

std::vector<Cluster> cluster_eigenvalues(const ComplexVector& ev, double base, double scale) {
    std::vector<Complex> sorted(ev.data(), ev.data() + ev.size());
    std::sort(sorted.begin(), sorted.end(), [](Complex a, Complex b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    std::vector<Cluster> clusters;
    for (Complex z : sorted) clusters.push_back({z, 1});
    // Agglomerate the closest admissible pair until none is left.
    for (;;) {
        std::size_t bi = 0;
        std::size_t bj = 0;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < clusters.size(); ++i) {
            for (std::size_t j = i + 1; j < clusters.size(); ++j) {
                const double d = std::abs(clusters[i].center() - clusters[j].center());
                const double r = merge_radius(clusters[i].count + clusters[j].count, base) * scale;
                if (d <= r && d < best) {
                    best = d;
                    bi = i;
                    bj = j;
                }
            }
        }
        if (!std::isfinite(best)) break;
        clusters[bi].sum += clusters[bj].sum;
        clusters[bi].count += clusters[bj].count;
        clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(bj));
    }
    return clusters;
}

bool point_less(const LatticePoint& a, const LatticePoint& b) {
    const double ma = std::abs(a.value);
    const double mb = std::abs(b.value);
    if (ma != mb) return ma < mb;
    const double aa = std::arg(a.value);
    const double ab = std::arg(b.value);
    if (aa != ab) return aa < ab;
    return a.label < b.label;
}

}  // namespace

SpectralLattice lattice_generators(const QuadraticSymbol& q, const SymplecticSplitting& splitting,
                                   const LatticeOptions& options) {
    if (splitting.basis_S.cols() > 0 && !splitting.epsilon0) {
        throw InputError("lattice needs q elliptic on its singular space");
    }
    const HamiltonMap F = hamilton_map(q);
    Eigen::ComplexEigenSolver<ComplexMatrix> eig(F.F, false);
    if (eig.info() != Eigen::Success) throw NumericalError("eigensolver failed on the Hamilton map");
    const double scale = std::max(max_norm(F.F), 1e-300);
    const auto clusters = cluster_eigenvalues(eig.eigenvalues(), options.cluster_radius, scale);

    SpectralLattice selected;
    SpectralLattice with_axis;
    selected.n = with_axis.n = q.n();
    bool ambiguous = false;
    const double axis = options.axis_tolerance * scale;
    for (const Cluster& c : clusters) {
        const Complex mu = Complex(0.0, -1.0) * c.center();
        const LatticeGenerator g{mu, c.count};
        if (mu.real() > axis) {
            selected.generators.push_back(g);
            with_axis.generators.push_back(g);
        } else if (mu.real() >= -axis) {
            if (std::abs(mu) <= axis) {
                throw NumericalError("Hamilton map has a zero eigenvalue; the spectrum is not discrete");
            }
            if (splitting.epsilon0) {
                if (*splitting.epsilon0 * mu.imag() > 0.0) selected.generators.push_back(g);
            } else {
                ambiguous = true;
                with_axis.generators.push_back(g);
            }
        }
    }
    auto count = [](const SpectralLattice& l) {
        int s = 0;
        for (const auto& g : l.generators) s += g.r;
        return s;
    };
    if (ambiguous) {
        selected.count_consistent = count(selected) == selected.n;
        with_axis.count_consistent = count(with_axis) == with_axis.n;
        throw AmbiguityError("eigenvalue of the Hamilton map on the imaginary axis cannot be classified",
                             selected, with_axis);
    }
    selected.count_consistent = count(selected) == selected.n;
    return selected;
}

SpectralLattice quadratic_lattice(const QuadraticSymbol& q, const LatticeOptions& options) {
    const SingularSpaceReport report = analyze(q);
    if (!report.elliptic || !report.elliptic->elliptic) {
        throw InputError("quadratic symbol is not elliptic on its singular space");
    }
    return lattice_generators(q, symplectic_splitting(q, report), options);
}

std::vector<LatticePoint> enumerate_spectrum(const SpectralLattice& lattice, double radius,
                                             std::size_t max_points) {
    if (!(radius > 0.0)) throw InputError("enumeration radius must be positive");
    const auto& gens = lattice.generators;
    std::vector<LatticePoint> out;
    if (gens.empty()) return out;

    // Project onto a direction in which every generator has positive part;
    // the projection of a value bounds its modulus from below.
    double lo = std::numbers::pi;
    double hi = -std::numbers::pi;
    for (const auto& g : gens) {
        if (std::abs(g.mu) == 0.0) throw NumericalError("zero lattice generator");
        lo = std::min(lo, std::arg(g.mu));
        hi = std::max(hi, std::arg(g.mu));
    }
    const Complex dir = std::polar(1.0, -(lo + hi) / 2.0);
    std::vector<double> proj;
    double base = 0.0;
    for (const auto& g : gens) {
        const double p = (dir * g.mu).real();
        if (!(p > 1e-12 * std::abs(g.mu))) {
            throw NumericalError("lattice generators do not lie in an open half-plane");
        }
        proj.push_back(p);
        base += g.r * p;
    }

    std::size_t visited = 0;
    std::vector<int> label(gens.size(), 0);
    auto recurse = [&](auto&& self, std::size_t g, double used, Complex partial) -> void {
        if (g == gens.size()) {
            if (++visited > max_points) {
                throw NumericalError("lattice enumeration exceeded " + std::to_string(max_points) +
                                     " points; reduce the radius");
            }
            if (std::abs(partial) < radius) out.push_back({partial, label});
            return;
        }
        const auto& gen = gens[g];
        for (int k = 0;; ++k) {
            const double step = 2.0 * k * proj[g];
            if (base + used + step >= radius) break;
            label[g] = k;
            self(self, g + 1, used + step, partial + static_cast<double>(gen.r + 2 * k) * gen.mu);
        }
        label[g] = 0;
    };
    recurse(recurse, 0, 0.0, Complex{});
    std::sort(out.begin(), out.end(), point_less);
    return out;
}

std::vector<SpectrumValue> spectrum_with_multiplicity(const SpectralLattice& lattice, double radius,
                                                      Complex center, std::size_t max_points) {
    SpectralLattice expanded;
    expanded.n = lattice.n;
    std::vector<std::size_t> owner;
    for (std::size_t g = 0; g < lattice.generators.size(); ++g) {
        for (int c = 0; c < lattice.generators[g].r; ++c) {
            expanded.generators.push_back({lattice.generators[g].mu, 1});
            owner.push_back(g);
        }
    }
    const auto points = enumerate_spectrum(expanded, radius + std::abs(center), max_points);

    double scale = 1.0;
    for (const auto& g : lattice.generators) scale = std::max(scale, std::abs(g.mu));
    const double tol = 1e-9 * scale;

    std::vector<SpectrumValue> out;
    std::vector<std::set<std::vector<int>>> labels;
    for (const auto& p : points) {
        if (!(std::abs(p.value - center) < radius)) continue;
        std::vector<int> original(lattice.generators.size(), 0);
        for (std::size_t e = 0; e < p.label.size(); ++e) original[owner[e]] += p.label[e];
        auto it = std::find_if(out.begin(), out.end(),
                               [&](const SpectrumValue& v) { return std::abs(v.value - p.value) <= tol; });
        if (it == out.end()) {
            out.push_back({p.value, 1, {}});
            labels.push_back({original});
        } else {
            ++it->multiplicity;
            labels[static_cast<std::size_t>(it - out.begin())].insert(original);
        }
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i].labels.assign(labels[i].begin(), labels[i].end());
    }
    return out;
}

void ModelProblem::validate() const {
    if (points.empty()) throw InputError("model problem has no points");
    if (!(h > 0.0)) throw InputError("semiclassical parameter h must be positive");
    const int dim = n();
    for (std::size_t j = 0; j < points.size(); ++j) {
        const auto& p = points[j];
        if (p.q.n() != dim) throw InputError("model problem points have different dimensions");
        if (p.X.size() != 2 * dim) throw InputError("point " + std::to_string(j) + " has wrong length");
        Eigen::SelfAdjointEigenSolver<RealMatrix> eig(p.q.real_matrix(), Eigen::EigenvaluesOnly);
        if (eig.eigenvalues().minCoeff() < -1e-10 * std::max(p.q.norm(), 1e-300)) {
            throw InputError("point " + std::to_string(j) + ": real part of q is not non-negative");
        }
        for (std::size_t i = 0; i < j; ++i) {
            if ((points[i].X - p.X).norm() <= 1e-12) {
                throw InputError("points " + std::to_string(i) + " and " + std::to_string(j) +
                                 " coincide");
            }
        }
    }
    if (perturbation && perturbation->n() != dim) {
        throw InputError("perturbation dimension does not match the model problem");
    }
}

PolynomialSymbol ModelProblem::local_symbol(std::size_t j) const {
    PolynomialSymbol sym = PolynomialSymbol::from_quadratic(points.at(j).q);
    if (perturbation) sym += *perturbation;
    return sym;
}

std::vector<LeadingEigenvalue> low_lying_eigenvalues(const ModelProblem& problem, double C,
                                                     const LatticeOptions& options) {
    problem.validate();
    if (!(C > 0.0)) throw InputError("disc radius must be positive");
    std::vector<LeadingEigenvalue> out;
    for (std::size_t j = 0; j < problem.points.size(); ++j) {
        const auto& pt = problem.points[j];
        const SpectralLattice lattice = quadratic_lattice(pt.q, options);
        // Slightly enlarged so values sitting on the circle are reported (flagged).
        const auto values =
            spectrum_with_multiplicity(lattice, C * (1.0 + 1e-9), -pt.p1, options.max_points);
        for (const auto& v : values) {
            LeadingEigenvalue e;
            e.lambda = v.value;
            e.z = problem.h * (v.value + pt.p1);
            e.multiplicity = v.multiplicity;
            e.point = j;
            e.collision = v.collision();
            e.near_boundary = std::abs(std::abs(v.value + pt.p1) - C) <= 1e-9 * C;
            out.push_back(e);
        }
    }
    return out;
}

}  // namespace quadspec
