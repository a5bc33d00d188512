#include <doctest.h>

#include <numbers>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "quadspec/hermite_galerkin.hpp"
#include "quadspec/kernels.hpp"
#include "quadspec/models.hpp"

using namespace quadspec;

namespace {

std::vector<Complex> sample_points() {
    std::vector<Complex> zs;
    for (int a = 0; a < 6; ++a) {
        for (int b = 0; b < 5; ++b) zs.emplace_back(-1.0 + 1.7 * a, -2.0 + 1.3 * b);
    }
    return zs;
}

std::vector<Complex> gaussian_samples(const kernels::UniformGrid& g) {
    std::vector<Complex> u(g.count);
    for (int k = 0; k < g.count; ++k) {
        const double x = g.at(k);
        u[k] = std::exp(Complex(-0.5 * (x - 0.3) * (x - 0.3), 1.2 * x));
    }
    return u;
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("Schur/Lanczos sigma_min agrees with the dense SVD reference") {
    for (const char* expr : {"xi^2 + i*x^2", "x^2 + xi^2 + i*x^3", "xi^2 + x^2 + 0.3*x^4 + i*x*xi"}) {
        const auto A = assemble(parse_polynomial(expr), 24).A;
        const auto zs = sample_points();
        const auto fast = kernels::sigma_min_grid(A, zs);
        const auto ref = kernels::sigma_min_grid_reference(A, zs);
        REQUIRE(fast.size() == zs.size());
        for (std::size_t k = 0; k < zs.size(); ++k) {
            CHECK(std::abs(fast[k] - ref[k]) <= 1e-8 * std::max(1.0, ref[k]));
        }
    }
}

TEST_CASE("sigma_min on an eigenvalue is numerically zero") {
    const auto A = assemble(parse_polynomial("x^2 + xi^2"), 12).A;
    const std::vector<Complex> zs{3.0, 5.0};
    for (double s : kernels::sigma_min_grid(A, zs)) CHECK(s < 1e-10);
}

TEST_CASE("wave packet rows agree with the direct triple loop") {
    const kernels::UniformGrid x{8.0, 257};
    const kernels::UniformGrid phase{3.0, 33};
    const auto u = gaussian_samples(x);
    const auto fast = kernels::wave_packet_rows(u, x, phase);
    const auto ref = kernels::wave_packet_rows_reference(u, x, phase);
    REQUIRE(fast.size() == static_cast<std::size_t>(phase.count * phase.count));
    double err = 0.0, scale = 0.0;
    for (std::size_t k = 0; k < fast.size(); ++k) {
        err = std::max(err, std::abs(fast[k] - ref[k]));
        scale = std::max(scale, std::abs(ref[k]));
    }
    CHECK(err <= 1e-12 * std::max(1.0, scale));
}

TEST_CASE("results do not depend on the thread count") {
#ifdef _OPENMP
    const auto A = assemble(parse_polynomial(models::davies()), 24).A;
    const auto zs = sample_points();
    const kernels::UniformGrid x{8.0, 129};
    const kernels::UniformGrid phase{3.0, 17};
    const auto u = gaussian_samples(x);
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const auto s1 = kernels::sigma_min_grid(A, zs);
    const auto w1 = kernels::wave_packet_rows(u, x, phase);
    omp_set_num_threads(4);
    const auto s4 = kernels::sigma_min_grid(A, zs);
    const auto w4 = kernels::wave_packet_rows(u, x, phase);
    omp_set_num_threads(saved);
    CHECK(s1 == s4);
    CHECK(w1 == w4);
#else
    MESSAGE("built without OpenMP");
#endif
}

}
