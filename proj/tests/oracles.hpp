#pragma once

// Independent reference computations used as test oracles. Nothing here
// calls into the library's numerics.

#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

/// Gauss-Hermite nodes and weights for weight e^{-t^2} (Golub-Welsch).
inline std::pair<std::vector<double>, std::vector<double>> gauss_hermite(int m) {
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
    for (int k = 1; k < m; ++k) T(k, k - 1) = T(k - 1, k) = std::sqrt(k / 2.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(T);
    std::vector<double> nodes(m), weights(m);
    for (int k = 0; k < m; ++k) {
        nodes[k] = eig.eigenvalues()(k);
        const double v = eig.eigenvectors()(0, k);
        weights[k] = std::sqrt(std::numbers::pi) * v * v;
    }
    return {nodes, weights};
}

/// Physicists' Hermite polynomial by the three-term recurrence.
inline double hermite_poly(int k, double x) {
    double h0 = 1.0, h1 = 2.0 * x;
    if (k == 0) return h0;
    for (int j = 1; j < k; ++j) {
        const double h2 = 2.0 * x * h1 - 2.0 * j * h0;
        h0 = h1;
        h1 = h2;
    }
    return h1;
}

/// psi_k(x) without the Gaussian factor e^{-x^2/2}.
inline double hermite_fn_poly_part(int k, double x) {
    double norm = std::sqrt(std::numbers::pi);
    for (int j = 1; j <= k; ++j) norm *= 2.0 * j;
    return hermite_poly(k, x) / std::sqrt(norm);
}

/// <psi_j | x^p | psi_k> by Gauss-Hermite quadrature (exact for the degrees used).
inline double position_moment(int j, int k, int p) {
    const auto [t, w] = gauss_hermite(60);
    double s = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        s += w[i] * hermite_fn_poly_part(j, t[i]) * hermite_fn_poly_part(k, t[i]) * std::pow(t[i], p);
    }
    return s;
}

/// E[f(Y)] for Y ~ N(0, s I_2), by tensor Gauss-Hermite.
template <typename F>
auto gaussian_average_2d(F&& f, double s, int m = 20) {
    const auto [t, w] = gauss_hermite(m);
    const double scale = std::sqrt(2.0 * s);
    decltype(f(0.0, 0.0)) acc{};
    for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) acc += w[a] * w[b] * f(scale * t[a], scale * t[b]);
    }
    return acc / std::numbers::pi;
}

}  // namespace oracle
