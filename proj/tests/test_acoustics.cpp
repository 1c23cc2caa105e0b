#include <doctest.h>

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "pathwave/acoustics.hpp"
#include "pathwave/baseflow.hpp"
#include "pathwave/errors.hpp"
#include "pathwave/random.hpp"
#include "pathwave/spectral.hpp"
#include "pathwave/splitting.hpp"

using namespace pathwave;

namespace {
constexpr double kPi = 3.14159265358979323846;
Grid square(int n) { return Grid::make2d(n, n, 2 * kPi, 2 * kPi); }
} // namespace

TEST_CASE("quadratic source of a zero field is zero") {
    const Grid g = square(16);
    const SourceField s = true_source(VectorField(g), 1.3);
    CHECK(s.s.max_abs() == 0.0);
    CHECK(s.kind == SourceKind::true_source);
}

TEST_CASE("quadratic source of a shear wave: second harmonic") {
    const Grid g = square(64);
    VectorField u(g);
    u.comp(0) = ScalarField::sample(
        g, [](const std::array<double, kMaxDim>& x) { return std::sin(x[0]); });
    const SourceField s = true_source(u, 1.0);
    // d_xx sin^2 x = d_xx (1 - cos 2x)/2 = 2 cos 2x
    const ScalarField expected = ScalarField::sample(
        g, [](const std::array<double, kMaxDim>& x) { return 2.0 * std::cos(2.0 * x[0]); });
    CHECK(max_abs_diff(s.s, expected) < 1e-10);
    CHECK(std::abs(s.s.mean()) < 1e-12);
}

TEST_CASE("quadratic source is even in the fluctuation") {
    const Grid g = square(64);
    VectorField u = random_band_limited_vector(g, 9, 8);
    VectorField neg(g);
    for (int comp = 0; comp < 2; ++comp)
        for (std::size_t m = 0; m < u.comp(comp).size(); ++m)
            neg.comp(comp)[m] = -u.comp(comp)[m];
    const SourceField a = true_source(u, 0.7);
    const SourceField b = true_source(neg, 0.7);
    CHECK(max_abs_diff(a.s, b.s) < 1e-12);
}

TEST_CASE("adding a uniform drift shifts the source by a transport term") {
    const Grid g = square(64);
    const double rho = 1.4, kx = 0.25, ky = -0.6;
    const VectorField u = random_band_limited_vector(g, 13, 5);
    VectorField shifted = u;
    shifted.comp(0) += ScalarField(g, kx);
    shifted.comp(1) += ScalarField(g, ky);

    const SourceField base = true_source(u, rho);
    const SourceField moved = true_source(shifted, rho);

    // s(u + k) - s(u) = 2 rho (k . grad)(div u), exact for band-limited input
    const VectorField gd = gradient(divergence(u, DiffMethod::spectral), DiffMethod::spectral);
    ScalarField expected(g);
    for (std::size_t m = 0; m < expected.size(); ++m)
        expected[m] = base.s[m] + 2.0 * rho * (kx * gd.comp(0)[m] + ky * gd.comp(1)[m]);
    CHECK(max_abs_diff(moved.s, expected) < 1e-10);
}

TEST_CASE("classical analogy source vanishes on a uniform stream") {
    const Grid g = square(32);
    const UniformPlaneWaveProvider uniform(g, {0.4, -0.2, 0.0}, 1.2, 1.0, 1.5, 0.0,
                                           {1, 0, 0}, 0.0, 0.1, 1e4);
    const SourceField s = lighthill_source(sample_flow(uniform, g, 0.0));
    CHECK(s.s.max_abs() < 1e-12);
    CHECK(s.kind == SourceKind::lighthill);
}

TEST_CASE("wave solver: zero data and no sources stays zero") {
    const Grid g = square(16);
    const BaseFlow bf = BaseFlow::uniform(g, {0.2, 0.0, 0.0}, 1.0, 1.0, 10.0);
    const WaveSolution sol = solve_convective_wave(ScalarField(g), ScalarField(g), bf, {},
                                                   0.5, 0.02, {0.25, 0.5});
    REQUIRE(sol.times.size() == 2);
    CHECK(sol.p[0].max_abs() == 0.0);
    CHECK(sol.p[1].max_abs() == 0.0);
}

TEST_CASE("wave solver reproduces the standing wave over one period") {
    const Grid g = square(64);
    const double c = 1.5;
    const int k = 2;
    const BaseFlow bf = BaseFlow::uniform(g, {0.0, 0.0, 0.0}, 1.0, c, 10.0);
    const ScalarField p0 = ScalarField::sample(
        g, [&](const std::array<double, kMaxDim>& x) { return std::cos(k * x[0]); });
    const double T = 2 * kPi / (c * k);
    const WaveSolution sol =
        solve_convective_wave(p0, ScalarField(g), bf, {}, T, T / 128, {T});
    REQUIRE(sol.times.size() == 1);
    CHECK(l2_diff(sol.p[0], p0) < 1e-5);
}

TEST_CASE("wave solver integrates a linear-in-time source exactly") {
    // p(t,x) = t sin x solves (1/c^2) p_tt - Lap p = S with c = 1 and
    // S(t,x) = t sin x; the trajectory is linear in t, so every RK stage
    // sees the exact slope and the march is exact to roundoff.
    const Grid g = square(32);
    const BaseFlow bf = BaseFlow::uniform(g, {0.0, 0.0, 0.0}, 1.0, 1.0, 10.0);
    const ScalarField sinx = ScalarField::sample(
        g, [](const std::array<double, kMaxDim>& x) { return std::sin(x[0]); });
    const double T = 0.5;
    std::vector<SourceField> sources;
    sources.push_back({SourceKind::true_source, 0.0, ScalarField(g)});
    ScalarField sT = sinx;
    sT *= T;
    sources.push_back({SourceKind::true_source, T, sT});

    const WaveSolution sol =
        solve_convective_wave(ScalarField(g), sinx, bf, sources, T, 0.02, {0.25, T});
    REQUIRE(sol.times.size() == 2);
    ScalarField expect_mid = sinx;
    expect_mid *= 0.25;
    CHECK(l2_diff(sol.p[0], expect_mid) < 1e-12);
    CHECK(l2_diff(sol.p[1], sT) < 1e-12);
}

TEST_CASE("wave solver commutes with a uniform background drift") {
    const Grid g = square(64);
    const double u0 = 0.3, T = 1.0;
    const BaseFlow rest = BaseFlow::uniform(g, {0.0, 0.0, 0.0}, 1.0, 1.0, 10.0);
    const BaseFlow moving = BaseFlow::uniform(g, {u0, 0.0, 0.0}, 1.0, 1.0, 10.0);
    const ScalarField p0 = random_band_limited_scalar(g, 61, 3);
    const ScalarField rate0 = random_band_limited_scalar(g, 62, 3);

    const WaveSolution a = solve_convective_wave(p0, rate0, rest, {}, T, 0.01, {T});
    const WaveSolution b = solve_convective_wave(p0, rate0, moving, {}, T, 0.01, {T});

    SpectralField ph = forward_transform(a.p[0]);
    for (int i = 0; i < 64; ++i)
        for (int j = 0; j < 64; ++j) {
            const std::size_t m = g.flat(i, j);
            const double arg = -ph.wavenumber(0, i) * u0 * T;
            ph[m] *= std::complex<double>(std::cos(arg), std::sin(arg));
        }
    CHECK(l2_diff(b.p[0], inverse_transform(ph)) < 1e-5);
}

TEST_CASE("stationary propagation equals convective propagation at rest") {
    const Grid g = square(32);
    const BaseFlow bf = BaseFlow::uniform(g, {0.0, 0.0, 0.0}, 1.0, 1.0, 10.0);
    const ScalarField p0 = random_band_limited_scalar(g, 71, 4);
    const WaveSolution a = solve_convective_wave(p0, ScalarField(g), bf, {}, 0.5, 0.02, {0.5},
                                                 Propagation::convective);
    const WaveSolution b = solve_convective_wave(p0, ScalarField(g), bf, {}, 0.5, 0.02, {0.5},
                                                 Propagation::stationary);
    CHECK(l2_diff(a.p[0], b.p[0]) < 1e-14);
}

TEST_CASE("wave solver lands exactly on awkward sample times") {
    const Grid g = square(16);
    const BaseFlow bf = BaseFlow::uniform(g, {0.0, 0.0, 0.0}, 1.0, 1.0, 10.0);
    const ScalarField p0 = random_band_limited_scalar(g, 81, 2);
    const std::vector<double> want{0.1, 0.1 + 1e-3, 0.37, 0.5};
    const WaveSolution sol = solve_convective_wave(p0, ScalarField(g), bf, {}, 0.5, 0.02, want);
    REQUIRE(sol.times.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i) CHECK(sol.times[i] == want[i]);
}

TEST_CASE("wave solver rejects oversized steps and bad source series") {
    const Grid g = square(16);
    const BaseFlow bf = BaseFlow::uniform(g, {0.0, 0.0, 0.0}, 1.0, 1.0, 10.0);
    const ScalarField zero(g);
    CHECK_THROWS_AS((void)solve_convective_wave(zero, zero, bf, {}, 0.5, 0.5, {0.5}),
                    ContractViolation);

    // series present but stopping short of T
    std::vector<SourceField> shortseries;
    shortseries.push_back({SourceKind::true_source, 0.0, ScalarField(g)});
    shortseries.push_back({SourceKind::true_source, 0.4, ScalarField(g)});
    CHECK_THROWS_AS((void)solve_convective_wave(zero, zero, bf, shortseries, 0.5, 0.02, {0.5}),
                    ContractViolation);

    // a source with a spatial mean is not a double divergence
    std::vector<SourceField> biased;
    biased.push_back({SourceKind::true_source, 0.0, ScalarField(g, 1.0)});
    biased.push_back({SourceKind::true_source, 0.5, ScalarField(g, 1.0)});
    CHECK_THROWS_AS((void)solve_convective_wave(zero, zero, bf, biased, 0.5, 0.02, {0.5}),
                    ContractViolation);
}

TEST_CASE("source comparison on a silent scenario is identically small") {
    const Grid g = square(32);
    const UniformPlaneWaveProvider uniform(g, {0.3, 0.0, 0.0}, 1.0, 1.0, 1.0, 0.0,
                                           {1, 0, 0}, 0.0, 0.1, 1e4);
    const BaseFlow bf = BaseFlow::uniform(g, {0.3, 0.0, 0.0}, 1.0, 1.0, 10.0);
    const std::vector<double> samples{0.0, 0.1, 0.2};
    const SourceComparison cmp = compare_sources(uniform, bf, 0.2, 0.01, samples);
    REQUIRE(cmp.times.size() == samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        CHECK(cmp.times[i] == samples[i]);
        CHECK(cmp.true_vs_reference[i] < 1e-12);
        CHECK(cmp.lighthill_vs_reference[i] < 1e-12);
        CHECK(cmp.true_vs_lighthill[i] < 1e-12);
    }
}

TEST_CASE("source comparison tracks a quiet plane wave") {
    const Grid g = square(32);
    const double P = 1e-4;
    const UniformPlaneWaveProvider wave(g, {0.0, 0.0, 0.0}, 1.0, 1.0, 1.0, P,
                                        {1, 0, 0}, 0.0, 0.1, 1e4);
    const BaseFlow bf = BaseFlow::uniform(g, {0.0, 0.0, 0.0}, 1.0, 1.0, 10.0);
    const std::vector<double> samples{0.0, 0.25, 0.5};
    const SourceComparison cmp = compare_sources(wave, bf, 0.5, 0.01, samples);
    REQUIRE(cmp.times.size() == samples.size());
    CHECK(cmp.true_vs_reference[0] < 1e-14); // identical initial data
    for (std::size_t i = 0; i < samples.size(); ++i) {
        // all three evolutions agree to the size of the quadratic source
        CHECK(cmp.true_vs_reference[i] < 1e-6);
        CHECK(cmp.true_vs_lighthill[i] < 1e-6);
    }
}
