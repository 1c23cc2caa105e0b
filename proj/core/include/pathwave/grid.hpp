#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

namespace pathwave {

inline constexpr int kMaxDim = 3;

/// Uniform periodic grid on [0, length) per axis, dim 2 or 3.
///
/// Cell i along an axis is centered at i * spacing; faces sit at the half
/// offsets. Anchoring centers at integer multiples of the spacing keeps the
/// discrete Fourier transform's Hermitian symmetry textbook, including the
/// Nyquist row, which is why cell counts must be even (and at least 4, so
/// the Nyquist and mean modes never collide with the resolved band).
class Grid {
public:
    Grid() = default;
    Grid(int dim, std::array<int, kMaxDim> n, std::array<double, kMaxDim> length);

    static Grid make2d(int nx, int ny, double lx, double ly);
    static Grid make3d(int nx, int ny, int nz, double lx, double ly, double lz);

    int dim() const noexcept { return dim_; }
    int n(int axis) const noexcept { return n_[axis]; }
    double length(int axis) const noexcept { return length_[axis]; }
    double spacing(int axis) const noexcept { return spacing_[axis]; }
    double min_spacing() const noexcept;

    /// Total number of cells.
    std::size_t size() const noexcept { return size_; }

    /// Physical coordinate of cell index i along an axis.
    double coord(int axis, int index) const noexcept { return spacing_[axis] * index; }

    /// Row-major flattening, last axis fastest.
    std::size_t flat(int i, int j) const noexcept {
        return static_cast<std::size_t>(i) * n_[1] + j;
    }
    std::size_t flat(int i, int j, int k) const noexcept {
        return (static_cast<std::size_t>(i) * n_[1] + j) * n_[2] + k;
    }

    /// Wraps an integer cell index into [0, n) along an axis.
    int wrap(int axis, int index) const noexcept {
        int n = n_[axis];
        int m = index % n;
        return m < 0 ? m + n : m;
    }

    /// Wraps a physical coordinate into [0, length) along an axis.
    double wrap_coord(int axis, double x) const noexcept;

    bool operator==(const Grid& other) const noexcept;
    bool operator!=(const Grid& other) const noexcept { return !(*this == other); }

private:
    int dim_ = 0;
    std::array<int, kMaxDim> n_{};
    std::array<double, kMaxDim> length_{};
    std::array<double, kMaxDim> spacing_{};
    std::size_t size_ = 0;
};

} // namespace pathwave
