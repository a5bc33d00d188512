#include "quadspec/hermite_galerkin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace quadspec {

namespace {

constexpr int kPadding = 4;

// x = (a + a^*)/sqrt(2), D = -i (a - a^*)/sqrt(2) on M basis functions.
struct AxisOperators {
    ComplexMatrix x;
    ComplexMatrix d;

    explicit AxisOperators(int M) : x(ComplexMatrix::Zero(M, M)), d(ComplexMatrix::Zero(M, M)) {
        const double s = 1.0 / std::sqrt(2.0);
        for (int k = 0; k + 1 < M; ++k) {
            const double a = std::sqrt(static_cast<double>(k + 1)) * s;  // <k|a|k+1>
            x(k, k + 1) = a;
            x(k + 1, k) = a;
            d(k, k + 1) = Complex(0.0, -a);
            d(k + 1, k) = Complex(0.0, a);
        }
    }
};

/// Weyl-ordered x^a D^b: average over all distinct arrangements of the factors.
ComplexMatrix weyl_monomial(const AxisOperators& ops, int a, int b, int N) {
    const Eigen::Index M = ops.x.rows();
    std::vector<int> order(static_cast<std::size_t>(a + b), 0);
    std::fill(order.begin() + a, order.end(), 1);
    ComplexMatrix sum = ComplexMatrix::Zero(M, M);
    int count = 0;
    do {
        ComplexMatrix prod = ComplexMatrix::Identity(M, M);
        for (int f : order) prod = prod * (f == 0 ? ops.x : ops.d);
        sum += prod;
        ++count;
    } while (std::next_permutation(order.begin(), order.end()));
    return sum.topLeftCorner(N, N) / static_cast<double>(count);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

}  // namespace

GalerkinMatrix assemble(const PolynomialSymbol& sym, int N, double h) {
    const int n = sym.n();
    if (n < 1) throw InputError("symbol has no dimension");
    if (!(h > 0.0)) throw InputError("h must be positive");
    if (N < 2) throw InputError("truncation N must be >= 2");
    if (N < sym.degree() + 1) {
        throw InputError("truncation N = " + std::to_string(N) + " cannot hold a degree " +
                         std::to_string(sym.degree()) + " band");
    }
    long long dim = 1;
    for (int j = 0; j < n; ++j) {
        dim *= N;
        if (dim > kMaxGalerkinDimension) {
            throw InputError("Galerkin dimension N^n exceeds " + std::to_string(kMaxGalerkinDimension));
        }
    }

    const AxisOperators ops(N + kPadding);
    std::map<std::pair<int, int>, ComplexMatrix> cache;
    auto axis_matrix = [&](int a, int b) -> const ComplexMatrix& {
        auto it = cache.find({a, b});
        if (it == cache.end()) it = cache.emplace(std::pair{a, b}, weyl_monomial(ops, a, b, N)).first;
        return it->second;
    };

    const PolynomialSymbol scaled = sym.dilated(std::sqrt(h));
    GalerkinMatrix out{n, N, h, ComplexMatrix::Zero(dim, dim)};
    for (const auto& [alpha, c] : scaled.terms()) {
        ComplexMatrix term = axis_matrix(alpha[0], alpha[n]);
        for (int j = 1; j < n; ++j) term = kron(term, axis_matrix(alpha[j], alpha[n + j]));
        out.A += c * term;
    }
    return out;
}

std::vector<Complex> eigenvalues(const ComplexMatrix& A) {
    Eigen::ComplexEigenSolver<ComplexMatrix> eig(A, false);
    if (eig.info() != Eigen::Success) throw NumericalError("dense eigensolver did not converge");
    std::vector<Complex> out(eig.eigenvalues().data(), eig.eigenvalues().data() + A.rows());
    std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
        const double ma = std::abs(a);
        const double mb = std::abs(b);
        return ma != mb ? ma < mb : std::arg(a) < std::arg(b);
    });
    return out;
}

double min_singular_value(const ComplexMatrix& A, Complex z) {
    ComplexMatrix shifted = A;
    shifted.diagonal().array() -= z;
    Eigen::BDCSVD<ComplexMatrix> svd(shifted);
    if (svd.info() != Eigen::Success) throw NumericalError("SVD did not converge");
    return svd.singularValues().size() == 0 ? 0.0 : svd.singularValues().minCoeff();
}

StableEigenvalues stable_eigenvalues(const PolynomialSymbol& sym, int N, double h, double eps,
                                     double radius) {
    const auto coarse = eigenvalues(assemble(sym, N, h).A);
    const auto fine = eigenvalues(assemble(sym, 2 * N, h).A);
    StableEigenvalues out;
    for (Complex z : fine) {
        if (!(std::abs(z) < radius)) continue;
        double best = std::numeric_limits<double>::infinity();
        for (Complex w : coarse) best = std::min(best, std::abs(z - w));
        if (best < eps) {
            out.values.push_back(z);
            out.drift.push_back(best);
        }
    }
    return out;
}

std::pair<Complex, double> cluster_centroid(const std::vector<Complex>& values, Complex target, int m) {
    if (m < 1 || static_cast<std::size_t>(m) > values.size()) throw InputError("cluster size out of range");
    std::vector<Complex> sorted = values;
    std::partial_sort(sorted.begin(), sorted.begin() + m, sorted.end(),
                      [&](Complex a, Complex b) { return std::abs(a - target) < std::abs(b - target); });
    Complex mean = 0.0;
    for (int k = 0; k < m; ++k) mean += sorted[k];
    mean /= static_cast<double>(m);
    double spread = 0.0;
    for (int k = 0; k < m; ++k) spread = std::max(spread, std::abs(sorted[k] - mean));
    return {mean, spread};
}

std::vector<ClusterMatch> match_clusters(const PolynomialSymbol& sym, int N, double h,
                                         const std::vector<std::pair<Complex, int>>& targets, double eps) {
    const auto coarse = eigenvalues(assemble(sym, N, h).A);
    const auto fine = eigenvalues(assemble(sym, 2 * N, h).A);
    std::vector<ClusterMatch> out;
    for (const auto& [target, m] : targets) {
        ClusterMatch c;
        c.target = target;
        c.multiplicity = m;
        const auto [fine_mean, spread] = cluster_centroid(fine, target, m);
        const auto coarse_mean = cluster_centroid(coarse, target, m).first;
        c.centroid = fine_mean;
        c.spread = spread;
        c.error = std::abs(fine_mean - target);
        c.drift = std::abs(fine_mean - coarse_mean);
        c.stable = c.drift < eps;
        out.push_back(c);
    }
    return out;
}

}  // namespace quadspec
