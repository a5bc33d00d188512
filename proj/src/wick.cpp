#include "quadspec/wick.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace quadspec::wick {

namespace {

double trapezoid_weight(int k, const UniformGrid& g) {
    return (k == 0 || k == g.count - 1) ? 0.5 * g.step() : g.step();
}

void check_grid(const UniformGrid& g, const char* what) {
    if (g.count < 16) throw InputError(std::string(what) + " grid needs at least 16 points");
    if (!(g.L > 0.0)) throw InputError(std::string(what) + " grid half-width must be positive");
    if (g.step() > kMaxStep) {
        throw InputError(std::string(what) + " grid step " + std::to_string(g.step()) +
                         " does not resolve the Gaussian window (max 0.25)");
    }
}

void check_one_dimensional(const PolynomialSymbol& a, const char* what) {
    if (a.n() != 1) throw InputError(std::string(what) + " must be a symbol on R^2 (n = 1)");
}

// Moments of N(0, s): E[Y^k] = (k-1)!! s^{k/2} for even k.
double gaussian_moment(int k, double s) {
    if (k % 2) return 0.0;
    double m = 1.0;
    for (int j = k - 1; j > 0; j -= 2) m *= j;
    return m * std::pow(s, k / 2);
}

double binomial(int n, int k) {
    double b = 1.0;
    for (int j = 1; j <= k; ++j) b = b * (n - k + j) / j;
    return b;
}

// X = (a + a^*)/(2 sqrt(pi)), Xi = -i (a - a^*)/(2 sqrt(pi)).
struct ScaledLadder {
    ComplexMatrix x;
    ComplexMatrix xi;

    explicit ScaledLadder(int M) : x(ComplexMatrix::Zero(M, M)), xi(ComplexMatrix::Zero(M, M)) {
        const double s = 0.5 / std::sqrt(std::numbers::pi);
        for (int k = 0; k + 1 < M; ++k) {
            const double a = std::sqrt(static_cast<double>(k + 1)) * s;
            x(k, k + 1) = a;
            x(k + 1, k) = a;
            xi(k, k + 1) = Complex(0.0, -a);
            xi(k + 1, k) = Complex(0.0, a);
        }
    }
};

ComplexMatrix symmetrized(const ScaledLadder& ops, int a, int b) {
    const Eigen::Index M = ops.x.rows();
    std::vector<int> order(static_cast<std::size_t>(a + b), 0);
    std::fill(order.begin() + a, order.end(), 1);
    ComplexMatrix sum = ComplexMatrix::Zero(M, M);
    int count = 0;
    do {
        ComplexMatrix prod = ComplexMatrix::Identity(M, M);
        for (int f : order) prod = prod * (f == 0 ? ops.x : ops.xi);
        sum += prod;
        ++count;
    } while (std::next_permutation(order.begin(), order.end()));
    return sum / static_cast<double>(count);
}

double block_norm(const ComplexMatrix& A, int block) {
    Eigen::JacobiSVD<ComplexMatrix> svd(A.topLeftCorner(block, block));
    return svd.singularValues()(0);
}

}  // namespace

void GridFunction::validate() const {
    if (grid.count < 16) throw InputError("grid function needs at least 16 samples");
    if (static_cast<int>(values.size()) != grid.count) throw InputError("grid size and sample count differ");
    double total = 0.0;
    double tail = 0.0;
    for (int k = 0; k < grid.count; ++k) {
        if (!std::isfinite(values[k].real()) || !std::isfinite(values[k].imag())) {
            throw InputError("grid function has non-finite samples");
        }
        const double m = std::norm(values[k]) * trapezoid_weight(k, grid);
        total += m;
        if (std::abs(grid.at(k)) > 0.9 * grid.L) tail += m;
    }
    if (!(total > 0.0)) throw InputError("grid function is zero");
    if (tail > 1e-8 * total) {
        throw InputError("grid function is not decayed: mass beyond 0.9 L is " + std::to_string(tail / total) +
                         " of the total");
    }
}

double GridFunction::norm_sq() const {
    double s = 0.0;
    for (int k = 0; k < grid.count; ++k) s += std::norm(values[k]) * trapezoid_weight(k, grid);
    return s;
}

double PhaseGridFunction::norm_sq() const {
    double s = 0.0;
    for (int p = 0; p < grid.count; ++p) {
        for (int q = 0; q < grid.count; ++q) {
            s += std::norm(at(p, q)) * trapezoid_weight(p, grid) * trapezoid_weight(q, grid);
        }
    }
    return s;
}

PhaseGridFunction wave_packet_transform(const GridFunction& u, const UniformGrid& phase) {
    u.validate();
    check_grid(u.grid, "position");
    check_grid(phase, "phase-space");
    return {phase, kernels::wave_packet_rows(u.values, u.grid, phase)};
}

std::vector<Complex> sample_symbol(const std::function<Complex(double, double)>& a, const UniformGrid& phase) {
    std::vector<Complex> out(static_cast<std::size_t>(phase.count) * phase.count);
    for (int p = 0; p < phase.count; ++p) {
        for (int q = 0; q < phase.count; ++q) {
            out[static_cast<std::size_t>(p) * phase.count + q] = a(phase.at(p), phase.at(q));
        }
    }
    return out;
}

Complex wick_expectation(std::span<const Complex> a, const PhaseGridFunction& Wu) {
    if (a.size() != Wu.values.size()) throw InputError("symbol samples do not match the phase grid");
    const auto& g = Wu.grid;
    Complex s = 0.0;
    for (int p = 0; p < g.count; ++p) {
        Complex row = 0.0;
        for (int q = 0; q < g.count; ++q) {
            const std::size_t k = static_cast<std::size_t>(p) * g.count + q;
            row += a[k] * std::norm(Wu.values[k]) * trapezoid_weight(q, g);
        }
        s += row * trapezoid_weight(p, g);
    }
    return s;
}

double hermite_function(int k, double x) {
    double prev = 0.0;
    double cur = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
    for (int j = 0; j < k; ++j) {
        const double next = std::sqrt(2.0 / (j + 1)) * x * cur - std::sqrt(static_cast<double>(j) / (j + 1)) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

GridFunction hermite_combination(const std::vector<Complex>& coefficients, const UniformGrid& grid) {
    GridFunction u{grid, std::vector<Complex>(static_cast<std::size_t>(grid.count), 0.0)};
    for (int m = 0; m < grid.count; ++m) {
        for (std::size_t k = 0; k < coefficients.size(); ++k) {
            u.values[m] += coefficients[k] * hermite_function(static_cast<int>(k), grid.at(m));
        }
    }
    return u;
}

PolynomialSymbol wick_to_weyl_quadratic(const PolynomialSymbol& a) {
    if (a.degree() > 2) throw InputError("closed-form Wick to Weyl map needs degree <= 2");
    Complex trace = 0.0;
    for (const auto& [alpha, c] : a.terms()) {
        if (std::count(alpha.begin(), alpha.end(), 2) == 1) trace += c;
    }
    return a + PolynomialSymbol::constant(a.n(), trace * kSmoothingVariance);
}

PolynomialSymbol gaussian_smoothing(const PolynomialSymbol& a) {
    const int dim = 2 * a.n();
    PolynomialSymbol out(a.n());
    for (const auto& [alpha, c] : a.terms()) {
        // Expand prod_k (X_k + Y_k)^{alpha_k} and average over Y coordinate-wise.
        std::vector<std::pair<MultiIndex, Complex>> partial{{MultiIndex(dim, 0), c}};
        for (int k = 0; k < dim; ++k) {
            std::vector<std::pair<MultiIndex, Complex>> next;
            for (const auto& [beta, w] : partial) {
                for (int i = 0; i <= alpha[k]; i += 2) {
                    MultiIndex gamma = beta;
                    gamma[k] = alpha[k] - i;
                    next.emplace_back(gamma, w * binomial(alpha[k], i) * gaussian_moment(i, kSmoothingVariance));
                }
            }
            partial = std::move(next);
        }
        for (const auto& [beta, w] : partial) out.add_term(beta, w);
    }
    return out;
}

Complex smoothed_value_by_quadrature(const PolynomialSymbol& a, double x, double xi, int nodes) {
    check_one_dimensional(a, "smoothed symbol");
    if (nodes < 16) throw InputError("quadrature needs at least 16 nodes");
    const UniformGrid g{3.0, nodes};
    Complex s = 0.0;
    PhasePoint X(2);
    for (int p = 0; p < nodes; ++p) {
        for (int q = 0; q < nodes; ++q) {
            const double y = g.at(p);
            const double eta = g.at(q);
            X << x + y, xi + eta;
            const double w = 2.0 * std::exp(-2.0 * std::numbers::pi * (y * y + eta * eta));
            s += a(X) * w * trapezoid_weight(p, g) * trapezoid_weight(q, g);
        }
    }
    return s;
}

ComplexMatrix weyl_matrix(const PolynomialSymbol& sym, int N) {
    check_one_dimensional(sym, "Weyl symbol");
    if (N < 2 || N < sym.degree() + 1) throw InputError("basis size too small for the symbol degree");
    const ScaledLadder ops(N + PolynomialSymbol::kMaxDegree);
    ComplexMatrix A = ComplexMatrix::Zero(N + PolynomialSymbol::kMaxDegree, N + PolynomialSymbol::kMaxDegree);
    for (const auto& [alpha, c] : sym.terms()) A += c * symmetrized(ops, alpha[0], alpha[1]);
    return A.topLeftCorner(N, N);
}

ComplexMatrix wick_matrix(const PolynomialSymbol& sym, int N) { return weyl_matrix(gaussian_smoothing(sym), N); }

double gamma2(const PolynomialSymbol& b) {
    if (b.degree() > 2) throw InputError("gamma2 is defined here for symbols of degree <= 2");
    const int dim = 2 * b.n();
    ComplexMatrix H = ComplexMatrix::Zero(dim, dim);
    for (const auto& [alpha, c] : b.terms()) {
        std::vector<int> idx;
        for (int k = 0; k < dim; ++k) {
            for (int j = 0; j < alpha[k]; ++j) idx.push_back(k);
        }
        if (idx.size() != 2) continue;
        if (idx[0] == idx[1]) {
            H(idx[0], idx[0]) += 2.0 * c;
        } else {
            H(idx[0], idx[1]) += c;
            H(idx[1], idx[0]) += c;
        }
    }
    // sup_T |T^t H T| = max_phi lambda_max(Re(e^{-i phi} H)).
    constexpr int kAngles = 1440;
    double best = 0.0;
    for (int s = 0; s < kAngles; ++s) {
        const double phi = 2.0 * std::numbers::pi * s / kAngles;
        const RealMatrix R = (std::polar(1.0, -phi) * H).real();
        Eigen::SelfAdjointEigenSolver<RealMatrix> eig(R, Eigen::EigenvaluesOnly);
        best = std::max(best, eig.eigenvalues().maxCoeff());
    }
    return best;
}

CompositionReport composition_check(const PolynomialSymbol& a, const PolynomialSymbol& b, int N, int block) {
    check_one_dimensional(a, "composition factor a");
    check_one_dimensional(b, "composition factor b");
    if (a.degree() > 2 || b.degree() > 2) throw InputError("composition factors must have degree <= 2");
    if (block < 1 || block > N) throw InputError("comparison block must satisfy 1 <= block <= N");

    const Complex inv4pi = 0.25 / std::numbers::pi;
    const PolynomialSymbol c = a * b - gradient_pairing(a, b) * inv4pi +
                               poisson_bracket(a, b) * (Complex(0.0, -1.0) * inv4pi);

    auto remainder = [&](int M) {
        // Band width 2 keeps the first M rows of the product exact on the wider basis.
        const int wide = M + 2 * PolynomialSymbol::kMaxDegree;
        const ComplexMatrix prod = (wick_matrix(a, wide) * wick_matrix(b, wide)).topLeftCorner(M, M);
        return block_norm(prod - wick_matrix(c, M), block);
    };

    CompositionReport r;
    r.N = N;
    r.block = block;
    r.remainder_norm = remainder(N);
    r.remainder_norm_doubled = remainder(2 * N);
    const double scale = std::max(r.remainder_norm, r.remainder_norm_doubled);
    r.drift = scale < 1e-12 ? 0.0 : std::abs(r.remainder_norm - r.remainder_norm_doubled) / scale;
    r.gamma2_b = gamma2(b);
    r.a_block_norm = block_norm(wick_matrix(a, N), block);
    const double denom = r.a_block_norm * r.gamma2_b;
    r.empirical_constant = denom > 0.0 ? r.remainder_norm_doubled / denom : 0.0;
    return r;
}

std::vector<DemoRow> run_demo(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    const UniformGrid xgrid{8.0, 512};
    const UniformGrid phase{8.0, 128};
    std::vector<DemoRow> rows;
    auto add = [&](std::string name, double value, double threshold, bool pass) {
        rows.push_back({std::move(name), value, threshold, pass});
    };

    // Random finite Hermite combinations, normalized.
    std::vector<PhaseGridFunction> packets;
    double isometry = 0.0;
    double reconstruction = 0.0;
    for (int s = 0; s < 20; ++s) {
        std::vector<Complex> coeffs(6);
        for (auto& c : coeffs) c = Complex(gauss(rng), gauss(rng));
        GridFunction u = hermite_combination(coeffs, xgrid);
        const double norm = std::sqrt(u.norm_sq());
        for (auto& v : u.values) v /= norm;
        packets.push_back(wave_packet_transform(u, phase));
        isometry = std::max(isometry, std::abs(packets.back().norm_sq() - 1.0));
        const std::vector<Complex> one(packets.back().values.size(), 1.0);
        reconstruction = std::max(reconstruction, std::abs(wick_expectation(one, packets.back()) - 1.0));
    }
    add("isometry_defect", isometry, 1e-6, isometry <= 1e-6);
    add("constant_symbol_defect", reconstruction, 1e-6, reconstruction <= 1e-6);

    {
        GridFunction g{xgrid, {}};
        for (int m = 0; m < xgrid.count; ++m) {
            const double x = xgrid.at(m);
            g.values.push_back(std::pow(2.0, 0.25) * std::exp(-std::numbers::pi * x * x));
        }
        const auto W = wave_packet_transform(g, phase);
        double err = 0.0;
        for (int p = 0; p < phase.count; ++p) {
            for (int q = 0; q < phase.count; ++q) {
                const double y = phase.at(p);
                const double eta = phase.at(q);
                const Complex exact = std::exp(-0.5 * std::numbers::pi * (y * y + eta * eta)) *
                                      std::polar(1.0, std::numbers::pi * y * eta);
                err = std::max(err, std::abs(W.at(p, q) - exact));
            }
        }
        add("gaussian_closed_form_error", err, 1e-10, err <= 1e-10);
    }

    // Non-negative symbols |sum_k c_k exp(-|Y - Y_k|^2 / (2 s_k^2))|^2.
    double min_real = std::numeric_limits<double>::infinity();
    double max_imag = 0.0;
    double bound_ratio = 0.0;
    for (int s = 0; s < 50; ++s) {
        struct Bump { Complex c; double y, eta, width; };
        std::vector<Bump> bumps;
        for (int k = 0; k < 3; ++k) {
            bumps.push_back({Complex(gauss(rng), gauss(rng)), -2.0 + 4.0 * uniform(rng), -2.0 + 4.0 * uniform(rng),
                             0.3 + 1.2 * uniform(rng)});
        }
        const auto a = sample_symbol(
            [&](double y, double eta) {
                Complex v = 0.0;
                for (const auto& b : bumps) {
                    const double r2 = (y - b.y) * (y - b.y) + (eta - b.eta) * (eta - b.eta);
                    v += b.c * std::exp(-r2 / (2.0 * b.width * b.width));
                }
                return Complex(std::norm(v), 0.0);
            },
            phase);
        double sup = 0.0;
        for (Complex v : a) sup = std::max(sup, std::abs(v));
        for (const auto& W : packets) {
            const Complex e = wick_expectation(a, W);
            min_real = std::min(min_real, e.real());
            max_imag = std::max(max_imag, std::abs(e.imag()));
            if (sup > 0.0) bound_ratio = std::max(bound_ratio, std::abs(e) / sup);
        }
    }
    add("positivity_min_real", min_real, -1e-12, min_real >= -1e-12 && max_imag <= 1e-12);
    add("norm_bound_ratio", bound_ratio, 1.0 + 1e-4, bound_ratio <= 1.0 + 1e-4);

    // Closed-form shift against direct quadrature of the Gaussian average.
    double shift_error = 0.0;
    for (int s = 0; s < 10; ++s) {
        PolynomialSymbol a(1);
        for (const MultiIndex& alpha : {MultiIndex{2, 0}, MultiIndex{1, 1}, MultiIndex{0, 2}, MultiIndex{1, 0},
                                        MultiIndex{0, 1}, MultiIndex{0, 0}}) {
            a.add_term(alpha, Complex(gauss(rng), gauss(rng)));
        }
        const PolynomialSymbol weyl = wick_to_weyl_quadratic(a);
        for (int t = 0; t < 5; ++t) {
            PhasePoint X(2);
            X << gauss(rng), gauss(rng);
            const Complex direct = smoothed_value_by_quadrature(a, X(0).real(), X(1).real());
            shift_error = std::max(shift_error, std::abs(weyl(X) - direct));
        }
    }
    add("wick_weyl_shift_error", shift_error, 1e-8, shift_error <= 1e-8);

    const std::vector<std::pair<const char*, const char*>> pairs{
        {"x", "xi"}, {"x^2 + xi^2", "x^2 + xi^2"}, {"x^2", "xi^2"}, {"xi^2 + i*x^2", "x*xi"}, {"x + 2*xi", "x^2 - xi"}};
    double drift = 0.0;
    double zero_case = 0.0;
    for (const auto& [ea, eb] : pairs) {
        const auto r = composition_check(parse_polynomial(ea, 1), parse_polynomial(eb, 1), 32, 8);
        drift = std::max(drift, r.drift);
        if (std::string(ea) == "x") zero_case = r.remainder_norm_doubled;
    }
    add("composition_truncation_drift", drift, 0.05, drift <= 0.05);
    add("composition_x_xi_remainder", zero_case, 1e-12, zero_case <= 1e-12);

    double antisym = 0.0;
    for (const auto& [ea, eb] : pairs) {
        const auto a = parse_polynomial(ea, 1);
        const auto b = parse_polynomial(eb, 1);
        for (const auto& [alpha, c] : (poisson_bracket(a, b) + poisson_bracket(b, a)).terms()) {
            antisym = std::max(antisym, std::abs(c));
        }
    }
    add("poisson_antisymmetry", antisym, 0.0, antisym == 0.0);
    return rows;
}

}  // namespace quadspec::wick
