#include <cmath>
#include <numbers>

#include "quadspec/kernels.hpp"

namespace quadspec::kernels {

namespace {

double trapezoid_weight(int k, int count, double step) {
    return (k == 0 || k == count - 1) ? 0.5 * step : step;
}

void check_sizes(std::span<const Complex> u, const UniformGrid& x, const UniformGrid& phase) {
    if (static_cast<int>(u.size()) != x.count || x.count < 2 || phase.count < 2) {
        throw InputError("wave packet transform: grid sizes do not match the samples");
    }
}

}  // namespace

std::vector<Complex> wave_packet_rows(std::span<const Complex> u, const UniformGrid& x,
                                      const UniformGrid& phase) {
    check_sizes(u, x, phase);
    const double pi = std::numbers::pi;
    const int M = x.count;
    const int P = phase.count;
    const double norm = std::pow(2.0, 0.25);

    // E(q, m) = exp(-2 i pi x_m eta_q)
    ComplexMatrix E(P, M);
    for (int q = 0; q < P; ++q) {
        for (int m = 0; m < M; ++m) E(q, m) = std::polar(1.0, -2.0 * pi * x.at(m) * phase.at(q));
    }

    std::vector<Complex> out(static_cast<std::size_t>(P) * P);
#pragma omp parallel for schedule(static)
    for (int p = 0; p < P; ++p) {
        const double y = phase.at(p);
        ComplexVector g(M);
        for (int m = 0; m < M; ++m) {
            const double dx = x.at(m) - y;
            g(m) = u[static_cast<std::size_t>(m)] * (trapezoid_weight(m, M, x.step()) * std::exp(-pi * dx * dx));
        }
        const ComplexVector row = E * g;
        for (int q = 0; q < P; ++q) {
            // exp(-2 i pi (x - y) eta) = exp(-2 i pi x eta) exp(2 i pi y eta)
            out[static_cast<std::size_t>(p) * P + q] =
                norm * row(q) * std::polar(1.0, 2.0 * pi * y * phase.at(q));
        }
    }
    return out;
}

std::vector<Complex> wave_packet_rows_reference(std::span<const Complex> u, const UniformGrid& x,
                                                const UniformGrid& phase) {
    check_sizes(u, x, phase);
    const double pi = std::numbers::pi;
    const double norm = std::pow(2.0, 0.25);
    std::vector<Complex> out;
    out.reserve(static_cast<std::size_t>(phase.count) * phase.count);
    for (int p = 0; p < phase.count; ++p) {
        const double y = phase.at(p);
        for (int q = 0; q < phase.count; ++q) {
            const double eta = phase.at(q);
            Complex sum{};
            for (int m = 0; m < x.count; ++m) {
                const double dx = x.at(m) - y;
                sum += trapezoid_weight(m, x.count, x.step()) * u[static_cast<std::size_t>(m)] *
                       std::exp(Complex(-pi * dx * dx, -2.0 * pi * dx * eta));
            }
            out.push_back(norm * sum);
        }
    }
    return out;
}

}  // namespace quadspec::kernels
