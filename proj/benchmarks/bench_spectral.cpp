#include <benchmark/benchmark.h>

#include "pathwave/random.hpp"
#include "pathwave/spectral.hpp"
#include "pathwave/splitting.hpp"

using namespace pathwave;

namespace {
constexpr double kTwoPi = 6.283185307179586;

Grid square(int n) { return Grid::make2d(n, n, kTwoPi, kTwoPi); }
} // namespace

static void BM_TransformRoundTrip(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Grid g = square(n);
    const ScalarField f = random_band_limited_scalar(g, 1, n / 4);
    for (auto _ : state) {
        ScalarField back = inverse_transform(forward_transform(f));
        benchmark::DoNotOptimize(back[0]);
    }
    state.SetItemsProcessed(state.iterations() * g.size());
}
BENCHMARK(BM_TransformRoundTrip)->Arg(64)->Arg(128)->Arg(256);

static void BM_SpectralGradient(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Grid g = square(n);
    const ScalarField f = random_band_limited_scalar(g, 2, n / 4);
    for (auto _ : state) {
        VectorField grad = gradient(f, DiffMethod::spectral);
        benchmark::DoNotOptimize(grad.comp(0)[0]);
    }
    state.SetItemsProcessed(state.iterations() * g.size());
}
BENCHMARK(BM_SpectralGradient)->Arg(64)->Arg(128)->Arg(256);

static void BM_HelmholtzSplit(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Grid g = square(n);
    const VectorField u = random_band_limited_vector(g, 3, n / 4);
    for (auto _ : state) {
        SplitVelocity split = helmholtz_split(u);
        benchmark::DoNotOptimize(split.acoustic.comp(0)[0]);
    }
    state.SetItemsProcessed(state.iterations() * g.size());
}
BENCHMARK(BM_HelmholtzSplit)->Arg(64)->Arg(128)->Arg(256);

BENCHMARK_MAIN();
