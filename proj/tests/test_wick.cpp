#include <doctest.h>

#include <numbers>

#include "oracles.hpp"
#include "quadspec/wick.hpp"

using namespace quadspec;
using namespace quadspec::wick;

namespace {

constexpr double kPi = std::numbers::pi;

GridFunction ground_state(const UniformGrid& g) {
    GridFunction u{g, {}};
    for (int k = 0; k < g.count; ++k) u.values.push_back(std::pow(2.0, 0.25) * std::exp(-kPi * g.at(k) * g.at(k)));
    return u;
}

}  // namespace

TEST_SUITE("wick") {

TEST_CASE("transform of the Gaussian has a closed form") {
    const UniformGrid x{6.0, 301};
    const UniformGrid phase{4.0, 41};
    const auto W = wave_packet_transform(ground_state(x), phase);
    double err = 0.0;
    for (int p = 0; p < phase.count; ++p) {
        for (int q = 0; q < phase.count; ++q) {
            const double y = phase.at(p), eta = phase.at(q);
            const Complex exact = std::exp(-kPi * (y * y + eta * eta) / 2.0) * std::polar(1.0, kPi * y * eta);
            err = std::max(err, std::abs(W.at(p, q) - exact));
        }
    }
    CHECK(err < 1e-10);
}

TEST_CASE("transform is an isometry on Hermite combinations") {
    const UniformGrid x{8.0, 400};
    const UniformGrid phase{7.0, 113};
    for (int trial = 0; trial < 4; ++trial) {
        std::vector<Complex> c(5);
        for (int k = 0; k < 5; ++k) c[k] = Complex(std::cos(1.3 * k + trial), std::sin(0.7 * k * trial));
        const auto u = hermite_combination(c, x);
        double expected = 0.0;
        for (Complex ck : c) expected += std::norm(ck);
        // Hermite functions in x; the transform works in the 2 pi scaling but
        // the L2 norm is convention-free.
        CHECK(u.norm_sq() == doctest::Approx(expected).epsilon(1e-10));
        CHECK(wave_packet_transform(u, phase).norm_sq() == doctest::Approx(u.norm_sq()).epsilon(1e-6));
    }
}

TEST_CASE("hermite functions satisfy orthonormality") {
    const auto [t, w] = oracle::gauss_hermite(40);
    for (int j = 0; j < 6; ++j) {
        for (int k = 0; k < 6; ++k) {
            double s = 0.0;
            for (std::size_t i = 0; i < t.size(); ++i) {
                s += w[i] * std::exp(t[i] * t[i]) * hermite_function(j, t[i]) * hermite_function(k, t[i]);
            }
            CHECK(s == doctest::Approx(j == k ? 1.0 : 0.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("Wick expectation of x^2 in the ground state is 1/(2 pi)") {
    const UniformGrid x{6.0, 301};
    const UniformGrid phase{6.0, 97};
    const auto W = wave_packet_transform(ground_state(x), phase);
    const auto a = sample_symbol([](double y, double) { return Complex(y * y, 0.0); }, phase);
    const Complex e = wick_expectation(a, W);
    CHECK(std::abs(e - 1.0 / (2.0 * kPi)) < 1e-8);
}

TEST_CASE("Wick to Weyl shift matches a Gaussian average") {
    const auto a = parse_polynomial("2*x^2 - 0.5*x*xi + (1+i)*xi^2 + 3*x - i", 1);
    const auto weyl = wick_to_weyl_quadratic(a);
    const auto smooth = gaussian_smoothing(a);
    for (auto [x0, xi0] : {std::pair{0.0, 0.0}, {0.7, -1.1}, {-2.0, 0.4}}) {
        const Complex avg = oracle::gaussian_average_2d(
            [&](double y, double eta) {
                PhasePoint X(2);
                X << x0 + y, xi0 + eta;
                return a(X);
            },
            kSmoothingVariance);
        PhasePoint X(2);
        X << x0, xi0;
        CHECK(std::abs(weyl(X) - avg) < 1e-12);
        CHECK(std::abs(smooth(X) - avg) < 1e-12);
        CHECK(std::abs(smoothed_value_by_quadrature(a, x0, xi0) - avg) < 1e-8);
    }
    CHECK_THROWS_AS(wick_to_weyl_quadratic(parse_polynomial("x^3")), InputError);
}

TEST_CASE("quartic smoothing adds the Gaussian moments") {
    const double s = kSmoothingVariance;
    const auto smooth = gaussian_smoothing(parse_polynomial("x^4", 1));
    CHECK(std::abs(smooth.coefficient({4, 0}) - 1.0) < 1e-15);
    CHECK(std::abs(smooth.coefficient({2, 0}) - 6.0 * s) < 1e-15);
    CHECK(std::abs(smooth.coefficient({0, 0}) - 3.0 * s * s) < 1e-15);
    CHECK(std::abs(smooth.coefficient({1, 0})) < 1e-15);
}

TEST_CASE("canonical commutator in the 2 pi quantization") {
    const int N = 12;
    const auto X = weyl_matrix(parse_polynomial("x", 1), N);
    const auto P = weyl_matrix(parse_polynomial("xi", 1), N);
    const ComplexMatrix C = (X * P - P * X).topLeftCorner(N - 1, N - 1);
    const ComplexMatrix expected = ComplexMatrix::Identity(N - 1, N - 1) * Complex(0.0, 1.0 / (2.0 * kPi));
    CHECK((C - expected).norm() < 1e-13);
    // x^2 + xi^2 quantizes to (2k + 1) / (2 pi).
    const auto H = weyl_matrix(parse_polynomial("x^2 + xi^2", 1), 6);
    for (int k = 0; k < 6; ++k) CHECK(std::abs(H(k, k) - (2.0 * k + 1.0) / (2.0 * kPi)) < 1e-13);
}

TEST_CASE("composition remainder") {
    const auto zero = composition_check(parse_polynomial("x", 1), parse_polynomial("xi", 1), 24, 8);
    CHECK(zero.remainder_norm < 1e-12);
    CHECK(zero.remainder_norm_doubled < 1e-12);
    const auto r = composition_check(parse_polynomial("x^2 + xi^2", 1), parse_polynomial("x*xi", 1), 32, 8);
    CHECK(r.drift < 0.05);
    CHECK(r.gamma2_b == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(std::isfinite(r.empirical_constant));
}

TEST_CASE("second-derivative sup norm") {
    CHECK(gamma2(parse_polynomial("x^2 + xi^2", 1)) == doctest::Approx(2.0).epsilon(1e-4));
    CHECK(gamma2(parse_polynomial("x*xi", 1)) == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(gamma2(parse_polynomial("x + xi", 1)) == doctest::Approx(0.0));
}

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(wave_packet_transform(ground_state({6.0, 8}), {4.0, 41}), InputError);
    CHECK_THROWS_AS(wave_packet_transform(ground_state({6.0, 301}), {4.0, 9}), InputError);
    GridFunction wide{{2.0, 64}, std::vector<Complex>(64, 1.0)};
    CHECK_THROWS_AS(wide.validate(), InputError);
}

TEST_CASE("demo battery passes") {
    for (const auto& row : run_demo(1)) {
        INFO(row.name << " = " << row.value);
        CHECK(row.pass);
    }
}

}
