#pragma once

#include <span>
#include <vector>

#include "quadspec/types.hpp"

namespace quadspec::kernels {

/**
 * sigma_min(A - z I) for every z.
 *
 * One complex Schur factorization A = U T U^*, then per point the largest
 * eigenvalue of ((T - z)^* (T - z))^{-1} by Lanczos with full
 * reorthogonalization, using triangular solves only. Points are independent
 * and distributed over OpenMP threads; output order follows `points`.
 */
std::vector<double> sigma_min_grid(const ComplexMatrix& A, std::span<const Complex> points);

/// Serial reference: a dense SVD of A - z I at each point.
std::vector<double> sigma_min_grid_reference(const ComplexMatrix& A, std::span<const Complex> points);

/// Schur-form evaluator reused across calls on the same matrix.
class SchurResolvent {
public:
    explicit SchurResolvent(const ComplexMatrix& A);
    double sigma_min(Complex z) const;
    Eigen::Index size() const { return T_.rows(); }

private:
    ComplexMatrix T_;
};

/// Uniform grid t_k = -L + k * 2L/(count-1), k = 0..count-1.
struct UniformGrid {
    double L = 8.0;
    int count = 512;

    double step() const { return 2.0 * L / (count - 1); }
    double at(int k) const { return -L + k * step(); }
};

/**
 * Samples of Wu(y_p, eta_q) = 2^{1/4} int u(x) e^{-pi (x-y)^2} e^{-2 i pi (x-y) eta} dx
 * by the trapezoid rule on the x grid; output row-major in (p, q).
 *
 * Rows are split across OpenMP threads; each row is a matrix-vector product
 * against a precomputed e^{-2 i pi x eta} table.
 */
std::vector<Complex> wave_packet_rows(std::span<const Complex> u, const UniformGrid& x,
                                      const UniformGrid& phase);

/// Serial reference: direct triple loop evaluating every exponential.
std::vector<Complex> wave_packet_rows_reference(std::span<const Complex> u, const UniformGrid& x,
                                                const UniformGrid& phase);

}  // namespace quadspec::kernels
