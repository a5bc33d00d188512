#include "quadspec/singular_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace quadspec {

namespace {

double rank_threshold(int dim, double factor) {
    return dim * std::numeric_limits<double>::epsilon() * factor;
}

/// Orthonormal basis of the null space of A; singular values <= rel * sigma_max count as zero.
RealMatrix null_space(const RealMatrix& A, double rel) {
    const Eigen::Index cols = A.cols();
    if (A.rows() == 0) return RealMatrix::Identity(cols, cols);
    Eigen::JacobiSVD<RealMatrix> svd(A, Eigen::ComputeFullV);
    const RealVector& s = svd.singularValues();
    const double cutoff = (s.size() > 0 ? s(0) : 0.0) * rel;
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (s(i) > cutoff) ++rank;
    }
    return svd.matrixV().rightCols(cols - rank);
}

RealMatrix normalized(const RealMatrix& m) {
    const double s = max_norm(m);
    return s > 0.0 ? RealMatrix(m / s) : m;
}

}  // namespace

SingularSpaceReport singular_space(const HamiltonMap& F, const RankOptions& options) {
    if (!(options.factor > 0.0)) throw InputError("rank tolerance factor must be positive");
    const Eigen::Index dim = F.F.rows();
    const RealMatrix re = normalized(F.re());
    const RealMatrix im = normalized(F.im());
    const double rel = rank_threshold(static_cast<int>(dim), options.factor);

    SingularSpaceReport report;
    RealMatrix stack(0, dim);
    RealMatrix power = RealMatrix::Identity(dim, dim);
    RealMatrix basis;
    for (Eigen::Index k = 0; k < dim; ++k) {
        RealMatrix grown(stack.rows() + dim, dim);
        grown << stack, re * power;
        stack = std::move(grown);
        power = im * power;
        basis = null_space(stack, rel);
        const int d = static_cast<int>(basis.cols());
        report.partial_dims.push_back(d);
        if (d == 0 && !report.k0) report.k0 = static_cast<int>(k);
    }
    report.basis = basis;
    report.dim = static_cast<int>(basis.cols());
    if (report.dim != 0) report.k0.reset();
    return report;
}

std::optional<int> k0_index(const HamiltonMap& F, const RankOptions& options) {
    return singular_space(F, options).k0;
}

std::optional<int> combined_k0(const std::vector<std::optional<int>>& indices) {
    std::optional<int> out;
    for (const auto& k : indices) {
        if (!k) return std::nullopt;
        out = std::max(out.value_or(0), *k);
    }
    return out;
}

ComplexMatrix restricted_form(const QuadraticSymbol& q, const RealMatrix& basis) {
    const ComplexMatrix B = basis.cast<Complex>();
    return B.transpose() * q.matrix() * B;
}

EllipticityVerdict elliptic_on_S(const QuadraticSymbol& q, const SingularSpaceReport& report,
                                 const EllipticityOptions& options) {
    if (report.dim == 0) return {true, 1.0};
    const ComplexMatrix M = restricted_form(q, report.basis);
    const double scale = max_norm(M);
    if (scale == 0.0) return {false, 0.0};
    const RealMatrix re = M.real() / scale;
    const RealMatrix im = M.imag() / scale;
    const double tol = options.tolerance;

    RealMatrix pair(2 * re.rows(), re.cols());
    pair << re, im;
    if (null_space(pair, tol).cols() > 0) return {false, 0.0};

    double margin = 0.0;
    const int samples = std::max(1, options.theta_samples);
    Eigen::SelfAdjointEigenSolver<RealMatrix> eig;
    for (int k = 0; k < samples; ++k) {
        const double t = std::numbers::pi * k / samples;
        eig.compute(std::cos(t) * re + std::sin(t) * im, Eigen::EigenvaluesOnly);
        const RealVector& ev = eig.eigenvalues();
        const double lo = ev.minCoeff();
        const double hi = ev.maxCoeff();
        if (lo > tol) margin = std::max(margin, lo);
        if (hi < -tol) margin = std::max(margin, -hi);
    }
    if (margin > 0.0) return {true, margin};
    if (report.dim != 2) return {false, 0.0};

    // d = 2: zeros of u^T M u on the unit circle, u = (t, 1) or u = (1, 0).
    const Complex a = M(0, 0) / scale;
    const Complex b = M(0, 1) / scale;
    const Complex c = M(1, 1) / scale;
    if (std::abs(a) <= tol) return {false, 0.0};
    const Complex disc = std::sqrt(b * b - a * c);
    for (const Complex root : {(-b + disc) / a, (-b - disc) / a}) {
        if (std::abs(root.imag()) <= tol * (1.0 + std::abs(root))) return {false, 0.0};
    }
    double min_abs = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 2 * samples; ++k) {
        const double t = std::numbers::pi * k / (2 * samples);
        const double u0 = std::cos(t);
        const double u1 = std::sin(t);
        min_abs = std::min(min_abs, std::abs(a * u0 * u0 + 2.0 * b * u0 * u1 + c * u1 * u1));
    }
    return {true, min_abs};
}

SingularSpaceReport analyze(const QuadraticSymbol& q, const RankOptions& rank,
                            const EllipticityOptions& ellipticity) {
    SingularSpaceReport report = singular_space(hamilton_map(q), rank);
    report.elliptic = elliptic_on_S(q, report, ellipticity);
    return report;
}

RealMatrix subelliptic_gram(const QuadraticSymbol& q, std::optional<int> k0) {
    if (!k0) throw InputError("summed flow form needs a trivial singular space (k0 undefined)");
    const RealMatrix re_q = q.real_matrix();
    const RealMatrix im_f = hamilton_map(q).im();
    const Eigen::Index dim = re_q.rows();
    RealMatrix gram = RealMatrix::Zero(dim, dim);
    RealMatrix power = RealMatrix::Identity(dim, dim);
    for (int l = 0; l <= *k0; ++l) {
        gram += power.transpose() * re_q * power;
        power = im_f * power;
    }
    gram = 0.5 * (gram + gram.transpose());
    Eigen::SelfAdjointEigenSolver<RealMatrix> eig(gram, Eigen::EigenvaluesOnly);
    const double floor = rank_threshold(static_cast<int>(dim), RankOptions{}.factor) * max_norm(gram);
    if (!(eig.eigenvalues().minCoeff() > floor)) {
        throw NumericalError("summed flow form is not positive definite (min eigenvalue " +
                             std::to_string(eig.eigenvalues().minCoeff()) + ")");
    }
    return gram;
}

std::pair<RealVector, RealVector> SymplecticSplitting::decompose(const RealVector& X) const {
    const Eigen::Index a = basis_complement.cols();
    const Eigen::Index b = basis_S.cols();
    RealMatrix full(X.size(), a + b);
    full << basis_complement, basis_S;
    const RealVector c = full.fullPivLu().solve(X);
    return {c.head(a), c.tail(b)};
}

SymplecticSplitting symplectic_splitting(const QuadraticSymbol& q, const SingularSpaceReport& report) {
    const int dim = q.dim();
    const int d = report.dim;
    SymplecticSplitting out;
    out.basis_S = report.basis;
    if (d == 0) {
        out.basis_complement = RealMatrix::Identity(dim, dim);
        out.q1 = q.matrix();
        return out;
    }
    if (d % 2 != 0) {
        throw NumericalError("singular space has odd dimension " + std::to_string(d) +
                             "; the rank tolerance is likely misconfigured");
    }
    const RealMatrix J = symplectic_matrix(q.n());
    const RealMatrix js = report.basis.transpose() * J * report.basis;
    if (Eigen::FullPivLU<RealMatrix>(js).rank() < d) {
        throw NumericalError("symplectic form restricted to the singular space is degenerate");
    }
    out.basis_complement = null_space(report.basis.transpose() * J, rank_threshold(dim, 1e3));
    out.q1 = restricted_form(q, out.basis_complement);

    const ComplexMatrix m = restricted_form(q, report.basis);
    const double tol = 1e-8 * std::max(q.norm(), 1e-300);
    if (max_norm(m.real()) > tol) {
        throw NumericalError("q restricted to the singular space is not purely imaginary");
    }
    RealMatrix q2 = m.imag();
    q2 = 0.5 * (q2 + q2.transpose());
    Eigen::SelfAdjointEigenSolver<RealMatrix> sign(q2, Eigen::EigenvaluesOnly);
    if (sign.eigenvalues().minCoeff() > tol) {
        out.epsilon0 = 1;
    } else if (sign.eigenvalues().maxCoeff() < -tol) {
        out.epsilon0 = -1;
    } else {
        throw NumericalError("q restricted to the singular space is not definite");
    }
    out.q2 = q2;

    // Williamson: eigenvalues of js^{-1} q2 are +-i lambda_j / 2.
    Eigen::EigenSolver<RealMatrix> ham(js.inverse() * q2, false);
    for (Eigen::Index i = 0; i < ham.eigenvalues().size(); ++i) {
        const double w = ham.eigenvalues()(i).imag();
        if (w > 0.0) out.frequencies.push_back(2.0 * w);
    }
    std::sort(out.frequencies.begin(), out.frequencies.end());
    if (static_cast<int>(out.frequencies.size()) != d / 2) {
        throw NumericalError("could not resolve Williamson frequencies of q restricted to S");
    }
    return out;
}

}  // namespace quadspec
