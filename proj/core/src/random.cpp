#include "pathwave/random.hpp"

#include <cmath>

#include "pathwave/errors.hpp"
#include "pathwave/spectral.hpp"

namespace pathwave {

std::uint64_t CounterRng::next_bits() {
    std::uint64_t x = seed_ ^ (counter_ * 0x9E3779B97F4A7C15ull);
    ++counter_;
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

double CounterRng::next_unit() {
    return static_cast<double>(next_bits() >> 11) * 0x1.0p-53;
}

double CounterRng::next_range(double lo, double hi) {
    return lo + (hi - lo) * next_unit();
}

double CounterRng::next_normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    // (0,1] for the log draw.
    const double u1 = (static_cast<double>(next_bits() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
}

namespace {

// Fills the band with complex-gaussian coefficients, walking storage order
// and assigning each Hermitian pair from its canonical (lexicographically
// positive) representative so the result is a real field and the draw
// sequence does not depend on how the pair straddles the raster.
ScalarField synth_band(const Grid& grid, CounterRng& rng, int max_freq) {
    for (int a = 0; a < grid.dim(); ++a)
        if (max_freq >= grid.n(a) / 2)
            throw ContractViolation("band limit must stay below the Nyquist frequency");
    if (max_freq < 1) throw ContractViolation("band limit must be at least 1");

    SpectralField c(grid);
    const int nz = grid.dim() == 3 ? grid.n(2) : 1;
    for (int i = 0; i < grid.n(0); ++i)
        for (int j = 0; j < grid.n(1); ++j)
            for (int k = 0; k < nz; ++k) {
                const std::size_t m =
                    grid.dim() == 3 ? grid.flat(i, j, k) : grid.flat(i, j);
                const int k0 = c.freq(0, static_cast<int>(i));
                const int k1 = c.freq(1, static_cast<int>(j));
                const int k2 = grid.dim() == 3 ? c.freq(2, static_cast<int>(k)) : 0;
                if (std::abs(k0) > max_freq || std::abs(k1) > max_freq ||
                    std::abs(k2) > max_freq)
                    continue;
                if (k0 == 0 && k1 == 0 && k2 == 0) continue;
                const bool canonical =
                    k0 > 0 || (k0 == 0 && (k1 > 0 || (k1 == 0 && k2 > 0)));
                if (!canonical) continue;
                const std::complex<double> v(rng.next_normal(), rng.next_normal());
                c[m] = v;
                const int ci = grid.wrap(0, -i);
                const int cj = grid.wrap(1, -j);
                const int ck = grid.dim() == 3 ? grid.wrap(2, -k) : 0;
                const std::size_t mc =
                    grid.dim() == 3 ? grid.flat(ci, cj, ck) : grid.flat(ci, cj);
                c[mc] = std::conj(v);
            }
    ScalarField f = inverse_transform(c);
    const double m = f.max_abs();
    if (m > 0.0) f *= 1.0 / m;
    return f;
}

} // namespace

ScalarField random_band_limited_scalar(const Grid& grid, std::uint64_t seed, int max_freq) {
    CounterRng rng(seed);
    return synth_band(grid, rng, max_freq);
}

VectorField random_band_limited_vector(const Grid& grid, std::uint64_t seed, int max_freq) {
    CounterRng rng(seed);
    VectorField v(grid);
    for (int a = 0; a < grid.dim(); ++a) v.comp(a) = synth_band(grid, rng, max_freq);
    return v;
}

} // namespace pathwave
