#include "pathwave/grid.hpp"

#include <cmath>
#include <string>

#include "pathwave/errors.hpp"

namespace pathwave {

Grid::Grid(int dim, std::array<int, kMaxDim> n, std::array<double, kMaxDim> length)
    : dim_(dim), n_(n), length_(length) {
    if (dim != 2 && dim != 3)
        throw ContractViolation("grid dim must be 2 or 3, got " + std::to_string(dim));
    size_ = 1;
    for (int a = 0; a < dim_; ++a) {
        if (n_[a] < 4 || n_[a] % 2 != 0)
            throw ContractViolation("grid cell count along axis " + std::to_string(a) +
                                    " must be even and at least 4, got " + std::to_string(n_[a]));
        if (!(length_[a] > 0.0) || !std::isfinite(length_[a]))
            throw ContractViolation("grid length along axis " + std::to_string(a) +
                                    " must be positive and finite");
        spacing_[a] = length_[a] / n_[a];
        size_ *= static_cast<std::size_t>(n_[a]);
    }
    for (int a = dim_; a < kMaxDim; ++a) {
        n_[a] = 1;
        length_[a] = 0.0;
        spacing_[a] = 0.0;
    }
}

Grid Grid::make2d(int nx, int ny, double lx, double ly) {
    return Grid(2, {nx, ny, 1}, {lx, ly, 0.0});
}

Grid Grid::make3d(int nx, int ny, int nz, double lx, double ly, double lz) {
    return Grid(3, {nx, ny, nz}, {lx, ly, lz});
}

double Grid::min_spacing() const noexcept {
    double h = spacing_[0];
    for (int a = 1; a < dim_; ++a) h = std::min(h, spacing_[a]);
    return h;
}

double Grid::wrap_coord(int axis, double x) const noexcept {
    double L = length_[axis];
    double y = std::fmod(x, L);
    return y < 0.0 ? y + L : y;
}

bool Grid::operator==(const Grid& other) const noexcept {
    if (dim_ != other.dim_) return false;
    for (int a = 0; a < dim_; ++a)
        if (n_[a] != other.n_[a] || length_[a] != other.length_[a]) return false;
    return true;
}

} // namespace pathwave
