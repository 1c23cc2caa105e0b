#pragma once

#include <complex>
#include <vector>

#include "pathwave/field.hpp"
#include "pathwave/grid.hpp"

namespace pathwave {

/// Full complex Fourier raster of a field, same shape as the real raster,
/// indexed by storage index m per axis with signed integer frequency
/// k = m for m <= n/2 and k = m - n otherwise. The physical wavevector
/// component is 2*pi*k/length.
///
/// Convention: the forward transform divides by the cell count, so the
/// coefficient at k = 0 is the mean and a constant field 1.0 transforms to
/// a single coefficient 1.0. The inverse transform is the plain unnormalized
/// synthesis sum. Real fields give Hermitian-symmetric rasters.
class SpectralField {
public:
    SpectralField() = default;
    explicit SpectralField(const Grid& grid)
        : grid_(grid), data_(grid.size(), {0.0, 0.0}) {}

    const Grid& grid() const noexcept { return grid_; }
    std::size_t size() const noexcept { return data_.size(); }

    std::complex<double>* data() noexcept { return data_.data(); }
    const std::complex<double>* data() const noexcept { return data_.data(); }
    std::complex<double>& operator[](std::size_t i) noexcept { return data_[i]; }
    const std::complex<double>& operator[](std::size_t i) const noexcept { return data_[i]; }

    /// Signed integer frequency for storage index m along an axis.
    int freq(int axis, int m) const noexcept {
        const int n = grid_.n(axis);
        return m <= n / 2 ? m : m - n;
    }

    /// Physical wavevector component 2*pi*k/L.
    double wavenumber(int axis, int m) const noexcept {
        return 2.0 * 3.14159265358979323846 * freq(axis, m) / grid_.length(axis);
    }

    /// Wavenumber used by derivative operators: identical to wavenumber()
    /// except the Nyquist frequency maps to zero. Differentiating the
    /// unpaired Nyquist mode would break conjugate symmetry, so every
    /// derivative-like operator (and the Helmholtz projector, which must
    /// annihilate exactly the same modes) uses this table.
    double deriv_wavenumber(int axis, int m) const noexcept {
        const int n = grid_.n(axis);
        const int k = freq(axis, m);
        if (k == n / 2) return 0.0;
        return 2.0 * 3.14159265358979323846 * k / grid_.length(axis);
    }

private:
    Grid grid_;
    std::vector<std::complex<double>> data_;
};

/// dim spectral components sharing one grid.
struct SpectralVectorField {
    std::vector<SpectralField> comps;

    const Grid& grid() const { return comps.front().grid(); }
    int dim() const { return static_cast<int>(comps.size()); }
};

SpectralField forward_transform(const ScalarField& f);
ScalarField inverse_transform(const SpectralField& f);
SpectralVectorField forward_transform(const VectorField& f);
VectorField inverse_transform(const SpectralVectorField& f);

enum class DiffMethod {
    spectral,
    central2, ///< 2nd-order centered differences, periodic wrap
    central4, ///< 4th-order centered differences, periodic wrap
};

ScalarField derivative(const ScalarField& f, int axis, DiffMethod method);
VectorField gradient(const ScalarField& f, DiffMethod method);
ScalarField divergence(const VectorField& v, DiffMethod method);
ScalarField laplacian(const ScalarField& f, DiffMethod method);
VectorField laplacian(const VectorField& v, DiffMethod method);

/// Scalar vorticity d(u1)/dx0 - d(u0)/dx1. 2D fields only.
ScalarField curl2d(const VectorField& v, DiffMethod method);
/// Full curl vector. 3D fields only.
VectorField curl3d(const VectorField& v, DiffMethod method);
/// max-norm of the curl in either dimension; the certificate helper.
double curl_inf_norm(const VectorField& v, DiffMethod method);

/// Zeroes every mode with |k| > n/3 on any axis (the usual truncation rule
/// for quadratic products formed pointwise).
void apply_two_thirds_truncation(SpectralField& f);

/// sum over cells of |f|^2 / N. Equals the coefficient-side power sum for
/// the normalization above.
double physical_power(const ScalarField& f);
/// sum over modes of |c|^2.
double spectral_power(const SpectralField& f);

} // namespace pathwave
