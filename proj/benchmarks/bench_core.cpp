/// @file bench_core.cpp
/// @brief Transform, nonlinear term and single-step timings

#include "hns/solvers.hpp"

#include <benchmark/benchmark.h>

using namespace hns;

namespace {

GridSpec grid(int dim, int n) {
    GridSpec g;
    g.dim = dim;
    g.n = n;
    return g;
}

SpectralField field(const GridSpec& g) {
    std::mt19937_64 rng(1);
    RandomFieldSpec spec;
    spec.kmax = g.n / 3.0;
    spec.divergence_free = true;
    return random_field(g, g.dim, spec, rng);
}

void BM_RoundTrip(benchmark::State& state) {
    const GridSpec g = grid(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    const SpectralField F = field(g);
    for (auto _ : state) benchmark::DoNotOptimize(to_spectral(to_physical(F)));
}
BENCHMARK(BM_RoundTrip)->Args({2, 128})->Args({2, 512})->Args({3, 32})->Unit(benchmark::kMillisecond);

void BM_NonlinearTerm(benchmark::State& state) {
    const GridSpec g = grid(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    const SpectralField F = field(g);
    for (auto _ : state) benchmark::DoNotOptimize(nonlinear_term(F));
}
BENCHMARK(BM_NonlinearTerm)->Args({2, 128})->Args({3, 32})->Unit(benchmark::kMillisecond);

void BM_Step(benchmark::State& state) {
    const GridSpec g = grid(2, static_cast<int>(state.range(0)));
    ModelParams p;
    p.alpha = 1e-2;
    StepperConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 1.0;
    cfg.scheme = state.range(1) ? Scheme::RK4_FULL : Scheme::EXP_LINEAR_RK2;
    if (cfg.scheme == Scheme::RK4_FULL) cfg.dt = 1e-4;
    const Stepper stepper(g, p, cfg);
    const SolverState s = make_state(field(g), std::nullopt, p);
    for (auto _ : state) benchmark::DoNotOptimize(stepper.step(s));
}
BENCHMARK(BM_Step)->Args({128, 0})->Args({128, 1})->Args({256, 0})->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
