#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "quadspec/kernels.hpp"

namespace quadspec::kernels {

namespace {

constexpr int kMaxLanczosSteps = 40;
constexpr int kMaxRestarts = 25;
constexpr double kRelativeTolerance = 1e-13;

}  // namespace

SchurResolvent::SchurResolvent(const ComplexMatrix& A) {
    Eigen::ComplexSchur<ComplexMatrix> schur(A, false);
    if (schur.info() != Eigen::Success) throw NumericalError("Schur factorization did not converge");
    T_ = schur.matrixT();
}

double SchurResolvent::sigma_min(Complex z) const {
    const Eigen::Index n = T_.rows();
    if (n == 0) return 0.0;
    ComplexMatrix R = T_;
    R.diagonal().array() -= z;
    if ((R.diagonal().array().abs() == 0.0).any()) return 0.0;
    const auto upper = R.triangularView<Eigen::Upper>();

    // B = R^{-1} R^{-*} is Hermitian positive definite; lambda_max(B) = sigma_min^{-2}.
    auto apply = [&](const ComplexVector& v) -> ComplexVector {
        ComplexVector w = upper.adjoint().solve(v);
        return upper.solve(w);
    };

    const int steps = static_cast<int>(std::min<Eigen::Index>(n, kMaxLanczosSteps));
    // Fixed, non-symmetric start vector: deterministic and generic.
    ComplexVector start(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        start(k) = Complex(1.0 + 0.5 * std::sin(1.3 * k), std::cos(0.7 * k));
    }
    start.normalize();
    double estimate = 0.0;
    for (int restart = 0; restart < kMaxRestarts; ++restart) {
        ComplexMatrix V(n, steps);
        RealVector alpha(steps);
        RealVector beta(steps);
        V.col(0) = start;
        int m = 0;
        double previous = 0.0;
        bool converged = false;
        for (; m < steps; ++m) {
            ComplexVector w = apply(V.col(m));
            if (!w.allFinite()) return 0.0;
            alpha(m) = V.col(m).dot(w).real();
            // Full reorthogonalization (twice) keeps the Ritz values honest.
            for (int pass = 0; pass < 2; ++pass) {
                w -= V.leftCols(m + 1) * (V.leftCols(m + 1).adjoint() * w);
            }
            beta(m) = w.norm();

            Eigen::SelfAdjointEigenSolver<RealMatrix> ritz;
            RealMatrix Tm = RealMatrix::Zero(m + 1, m + 1);
            for (int i = 0; i <= m; ++i) {
                Tm(i, i) = alpha(i);
                if (i < m) Tm(i, i + 1) = Tm(i + 1, i) = beta(i);
            }
            ritz.compute(Tm, Eigen::EigenvaluesOnly);
            estimate = ritz.eigenvalues().maxCoeff();
            if (std::abs(estimate - previous) <= kRelativeTolerance * estimate ||
                beta(m) <= kRelativeTolerance * estimate) {
                converged = true;
                ++m;
                break;
            }
            previous = estimate;
            if (m + 1 < steps) V.col(m + 1) = w / beta(m);
        }
        if (converged || m >= n) break;
        // Restart from the dominant Ritz vector.
        RealMatrix Tm = RealMatrix::Zero(m, m);
        for (int i = 0; i < m; ++i) {
            Tm(i, i) = alpha(i);
            if (i + 1 < m) Tm(i, i + 1) = Tm(i + 1, i) = beta(i);
        }
        Eigen::SelfAdjointEigenSolver<RealMatrix> ritz(Tm);
        const RealVector y = ritz.eigenvectors().col(m - 1);
        start = V.leftCols(m) * y.cast<Complex>();
        start.normalize();
    }
    return estimate > 0.0 ? 1.0 / std::sqrt(estimate) : 0.0;
}

std::vector<double> sigma_min_grid(const ComplexMatrix& A, std::span<const Complex> points) {
    const SchurResolvent resolvent(A);
    std::vector<double> out(points.size());
    const long long count = static_cast<long long>(points.size());
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < count; ++i) {
        out[static_cast<std::size_t>(i)] = resolvent.sigma_min(points[static_cast<std::size_t>(i)]);
    }
    return out;
}

std::vector<double> sigma_min_grid_reference(const ComplexMatrix& A, std::span<const Complex> points) {
    std::vector<double> out;
    out.reserve(points.size());
    for (Complex z : points) {
        ComplexMatrix shifted = A;
        shifted.diagonal().array() -= z;
        Eigen::JacobiSVD<ComplexMatrix> svd(shifted);
        out.push_back(svd.singularValues().size() ? svd.singularValues().minCoeff() : 0.0);
    }
    return out;
}

}  // namespace quadspec::kernels
