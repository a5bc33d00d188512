#include "quadspec/symplectic.hpp"

#include <algorithm>
#include <random>
#include <string>

namespace quadspec {

QuadraticSymbol::QuadraticSymbol(const ComplexMatrix& Q) {
    if (Q.rows() != Q.cols() || Q.rows() < 2 || Q.rows() % 2 != 0) {
        throw InputError("quadratic symbol matrix must be square with even size >= 2, got " +
                         std::to_string(Q.rows()) + "x" + std::to_string(Q.cols()));
    }
    if (!Q.allFinite()) throw InputError("quadratic symbol matrix has non-finite entries");
    const double scale = max_norm(Q);
    const double asym = max_norm(Q - Q.transpose());
    if (asym > kSymmetryTolerance * scale) {
        throw InputError("quadratic symbol matrix is not symmetric (asymmetry " +
                         std::to_string(asym) + ")");
    }
    Q_ = 0.5 * (Q + Q.transpose());
}

QuadraticSymbol::QuadraticSymbol(const RealMatrix& re, const RealMatrix& im)
    : QuadraticSymbol([&] {
          if (re.rows() != im.rows() || re.cols() != im.cols()) {
              throw InputError("real and imaginary coefficient matrices differ in shape");
          }
          ComplexMatrix Q(re.rows(), re.cols());
          Q.real() = re;
          Q.imag() = im;
          return Q;
      }()) {}

QuadraticSymbol QuadraticSymbol::zero(int n) {
    return QuadraticSymbol(ComplexMatrix::Zero(2 * n, 2 * n));
}

QuadraticSymbol QuadraticSymbol::real_part() const {
    return QuadraticSymbol(ComplexMatrix(Q_.real().cast<Complex>()));
}

QuadraticSymbol QuadraticSymbol::imag_part() const {
    return QuadraticSymbol(ComplexMatrix(Q_.imag().cast<Complex>()));
}

Complex QuadraticSymbol::operator()(const PhasePoint& X) const {
    return polarized_eval(*this, X, X);
}

RealMatrix symplectic_matrix(int n) {
    RealMatrix J = RealMatrix::Zero(2 * n, 2 * n);
    J.topRightCorner(n, n) = -RealMatrix::Identity(n, n);
    J.bottomLeftCorner(n, n) = RealMatrix::Identity(n, n);
    return J;
}

Complex symplectic_product(const PhasePoint& X, const PhasePoint& Y) {
    if (X.size() != Y.size() || X.size() < 2 || X.size() % 2 != 0) {
        throw InputError("symplectic product needs equal even-length vectors");
    }
    const Eigen::Index n = X.size() / 2;
    // xi.y - x.eta, no conjugation: the form is bilinear.
    return (X.tail(n).transpose() * Y.head(n))(0) - (X.head(n).transpose() * Y.tail(n))(0);
}

Complex polarized_eval(const QuadraticSymbol& q, const PhasePoint& X, const PhasePoint& Y) {
    if (X.size() != q.dim() || Y.size() != q.dim()) {
        throw InputError("phase point dimension does not match the quadratic symbol");
    }
    return (X.transpose() * q.matrix() * Y)(0);
}

HamiltonMap hamilton_map(const QuadraticSymbol& q) {
    const RealMatrix J = symplectic_matrix(q.n());
    return HamiltonMap{-J.cast<Complex>() * q.matrix()};
}

double HamiltonResiduals::max() const {
    return std::max({identity, skew, real_part, imag_part});
}

HamiltonResiduals verify_hamilton_identities(const QuadraticSymbol& q, const HamiltonMap& F,
                                             int samples, std::uint64_t seed) {
    HamiltonResiduals out;
    const int dim = q.dim();
    if (F.F.rows() != dim || F.F.cols() != dim) {
        throw InputError("Hamilton map dimension does not match the quadratic symbol");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    auto draw = [&] {
        PhasePoint v(dim);
        for (int i = 0; i < dim; ++i) v(i) = gauss(rng);
        return v;
    };
    for (int s = 0; s < samples; ++s) {
        const PhasePoint X = draw();
        const PhasePoint Y = draw();
        const Complex sxfy = symplectic_product(X, F.F * Y);
        const Complex sfxy = symplectic_product(F.F * X, Y);
        out.identity = std::max(out.identity, std::abs(sxfy - polarized_eval(q, X, Y)));
        out.skew = std::max(out.skew, std::abs(sxfy + sfxy));
    }
    const ComplexMatrix re_map = hamilton_map(q.real_part()).F;
    const ComplexMatrix im_map = hamilton_map(q.imag_part()).F;
    out.real_part = max_norm(F.re().cast<Complex>() - re_map);
    out.imag_part = max_norm(F.im().cast<Complex>() - im_map);
    return out;
}

}  // namespace quadspec
