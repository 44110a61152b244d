// Serial reference vs OpenMP kernels, plus one full simulation cycle.
//
//   ./bench_kernels --benchmark_filter=unwrap
//   OMP_NUM_THREADS=4 ./bench_kernels

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "phasecal/kernels.hpp"
#include "phasecal/presets.hpp"
#include "phasecal/simulation.hpp"

namespace {

using phasecal::cplx;
namespace k = phasecal::kernels;

std::vector<cplx> noisy_tone(std::size_t n) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> normal(0.0, 0.05);
    std::vector<cplx> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = std::polar(1.0, 0.3 + normal(rng));
    return x;
}

template <void (*Rotate)(std::span<cplx>, std::span<const double>)>
void BM_rotate(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    auto x = noisy_tone(n);
    std::vector<double> phase(n, 0.001);
    for (auto _ : state) {
        Rotate(x, phase);
        benchmark::DoNotOptimize(x.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <double (*Mean)(std::span<const cplx>)>
void BM_unwrap_mean(benchmark::State& state) {
    const auto x = noisy_tone(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(Mean(x));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <void (*Kde)(std::span<const double>, std::span<const double>, double, std::span<double>)>
void BM_kde(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(2);
    std::normal_distribution<double> normal;
    std::vector<double> samples(n), grid(1024), density(1024);
    for (auto& s : samples) s = normal(rng);
    for (std::size_t g = 0; g < grid.size(); ++g) grid[g] = -5.0 + 10.0 * double(g) / 1024.0;
    for (auto _ : state) {
        Kde(grid, samples, 0.1, density);
        benchmark::DoNotOptimize(density.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * 1024);
}

void BM_simulation_cycles(benchmark::State& state) {
    phasecal::SimulationOptions o;
    o.config = phasecal::preset_config("table1_high");
    o.cycles = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(phasecal::run_simulation(o).report.chains.size());
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_rotate<k::serial::rotate>)->RangeMultiplier(8)->Range(1 << 10, 1 << 20);
BENCHMARK(BM_rotate<k::parallel::rotate>)->RangeMultiplier(8)->Range(1 << 10, 1 << 20);
BENCHMARK(BM_unwrap_mean<k::serial::unwrapped_mean_arg>)->RangeMultiplier(8)->Range(1 << 10, 1 << 20);
BENCHMARK(BM_unwrap_mean<k::parallel::unwrapped_mean_arg>)->RangeMultiplier(8)->Range(1 << 10, 1 << 20);
BENCHMARK(BM_kde<k::serial::kde_evaluate>)->Arg(1000)->Arg(10000);
BENCHMARK(BM_kde<k::parallel::kde_evaluate>)->Arg(1000)->Arg(10000);
BENCHMARK(BM_simulation_cycles)->Arg(100)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
