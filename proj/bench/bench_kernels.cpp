// Parallel kernels against their serial references.
#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "quadspec/hermite_galerkin.hpp"
#include "quadspec/kernels.hpp"
#include "quadspec/resolvent_probe.hpp"

using namespace quadspec;

namespace {

ComplexMatrix davies_matrix(int N) { return assemble(parse_polynomial("xi^2 + i*x^2", 1), N).A; }

std::vector<Complex> probe_points() {
    return omega_grid(OmegaRegion{1, 4.0, 0.5, 0.02}, ProbeGrid{8, 16});
}

std::vector<Complex> gaussian_samples(const kernels::UniformGrid& g) {
    std::vector<Complex> u;
    for (int k = 0; k < g.count; ++k) {
        const double x = g.at(k);
        u.emplace_back(std::pow(2.0, 0.25) * std::exp(-std::numbers::pi * x * x), 0.0);
    }
    return u;
}

void BM_SigmaGrid(benchmark::State& state) {
    const auto A = davies_matrix(static_cast<int>(state.range(0)));
    const auto zs = probe_points();
    for (auto _ : state) benchmark::DoNotOptimize(kernels::sigma_min_grid(A, zs));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(zs.size()));
}

void BM_SigmaGridReference(benchmark::State& state) {
    const auto A = davies_matrix(static_cast<int>(state.range(0)));
    const auto zs = probe_points();
    for (auto _ : state) benchmark::DoNotOptimize(kernels::sigma_min_grid_reference(A, zs));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(zs.size()));
}

void BM_WavePacket(benchmark::State& state) {
    const kernels::UniformGrid x{8.0, 512};
    const kernels::UniformGrid phase{8.0, static_cast<int>(state.range(0))};
    const auto u = gaussian_samples(x);
    for (auto _ : state) benchmark::DoNotOptimize(kernels::wave_packet_rows(u, x, phase));
}

void BM_WavePacketReference(benchmark::State& state) {
    const kernels::UniformGrid x{8.0, 512};
    const kernels::UniformGrid phase{8.0, static_cast<int>(state.range(0))};
    const auto u = gaussian_samples(x);
    for (auto _ : state) benchmark::DoNotOptimize(kernels::wave_packet_rows_reference(u, x, phase));
}

}  // namespace

BENCHMARK(BM_SigmaGrid)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SigmaGridReference)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WavePacket)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WavePacketReference)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
