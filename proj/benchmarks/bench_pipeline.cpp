#include <benchmark/benchmark.h>

#include "pathwave/baseflow.hpp"
#include "pathwave/flow.hpp"
#include "pathwave/perturbation.hpp"
#include "pathwave/random.hpp"

using namespace pathwave;

namespace {
constexpr double kTwoPi = 6.283185307179586;

Grid square(int n) { return Grid::make2d(n, n, kTwoPi, kTwoPi); }

PerturbationState bench_state(const Grid& g) {
    return PerturbationState::from_fluctuations(random_band_limited_scalar(g, 4, 8),
                                                random_band_limited_vector(g, 5, 8), 1.0, 1.0);
}
} // namespace

static void BM_StepCentral(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Grid g = square(n);
    const BaseFlow bf = BaseFlow::uniform(g, {0.3, 0.0, 0.0}, 1.0, 1.0, 1e6);
    PerturbationState s = bench_state(g);
    const double dt = 0.25 * g.min_spacing() / 1.3;
    double t = 0.0;
    for (auto _ : state) {
        s = step(s, bf, t, dt, FluxMode::central);
        t += dt;
        benchmark::DoNotOptimize(s.scaled_pressure[0]);
    }
    state.SetItemsProcessed(state.iterations() * g.size());
}
BENCHMARK(BM_StepCentral)->Arg(64)->Arg(128);

static void BM_StepUpwind(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Grid g = square(n);
    const BaseFlow bf = BaseFlow::uniform(g, {0.3, 0.0, 0.0}, 1.0, 1.0, 1e6);
    PerturbationState s = bench_state(g);
    const double dt = 0.25 * g.min_spacing() / 1.3;
    double t = 0.0;
    for (auto _ : state) {
        s = step(s, bf, t, dt, FluxMode::upwind);
        t += dt;
        benchmark::DoNotOptimize(s.scaled_pressure[0]);
    }
    state.SetItemsProcessed(state.iterations() * g.size());
}
BENCHMARK(BM_StepUpwind)->Arg(64)->Arg(128);

static void BM_BaseFlowSweep(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Grid g = square(n);
    const TaylorGreenProvider tg(g, 0.2, 1.0, 1.0, 1.0, 0.1, 1e4);
    for (auto _ : state) {
        BaseFlow bf = compute_base_flow(tg, g, 0.25, 0.025, {0.0});
        benchmark::DoNotOptimize(bf.p_bar());
    }
    state.SetItemsProcessed(state.iterations() * g.size());
}
BENCHMARK(BM_BaseFlowSweep)->Arg(32)->Arg(64);
