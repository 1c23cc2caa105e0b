#pragma once

#include <cstdint>

#include "pathwave/field.hpp"

namespace pathwave {

/// Counter-based deterministic random stream. Every draw is a pure function
/// of (seed, counter), so results are reproducible across platforms and
/// independent of call interleaving:
///
///   x        = seed XOR (counter * 0x9E3779B97F4A7C15)
///   x        = splitmix64 finalizer of (x + 0x9E3779B97F4A7C15)
///
/// where the finalizer is the standard xor-shift-multiply chain
/// (0xBF58476D1CE4E5B9, 0x94D049BB133111EB).
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    /// 64 uniform bits for the next counter value.
    std::uint64_t next_bits();

    /// Uniform double in [0, 1) with 53-bit resolution.
    double next_unit();

    /// Uniform double in [lo, hi).
    double next_range(double lo, double hi);

    /// Standard normal via Box-Muller on two counter draws.
    double next_normal();

    std::uint64_t counter() const noexcept { return counter_; }

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Zero-mean random scalar field with spectral support |k| <= max_freq per
/// axis (Nyquist and mean excluded), normalized to unit max-abs. Smooth by
/// construction, so derivative operators act on it with spectral accuracy.
ScalarField random_band_limited_scalar(const Grid& grid, std::uint64_t seed, int max_freq);

/// Component-wise band-limited random vector field, unit max-norm.
VectorField random_band_limited_vector(const Grid& grid, std::uint64_t seed, int max_freq);

} // namespace pathwave
