#include "pathwave/field.hpp"

#include <cmath>
#include <string>

#include "pathwave/errors.hpp"

namespace pathwave {

namespace {

void check_same_grid(const Grid& a, const Grid& b) {
    if (a != b) throw ContractViolation("field grids differ");
}

double cell_volume(const Grid& g) {
    double v = 1.0;
    for (int a = 0; a < g.dim(); ++a) v *= g.spacing(a);
    return v;
}

} // namespace

ScalarField::ScalarField(const Grid& grid, double fill)
    : grid_(grid), data_(grid.size(), fill) {}

ScalarField ScalarField::sample(
    const Grid& grid, const std::function<double(const std::array<double, kMaxDim>&)>& fn) {
    ScalarField f(grid);
    std::array<double, kMaxDim> x{};
    std::size_t idx = 0;
    const int nz = grid.dim() == 3 ? grid.n(2) : 1;
    for (int i = 0; i < grid.n(0); ++i) {
        x[0] = grid.coord(0, i);
        for (int j = 0; j < grid.n(1); ++j) {
            x[1] = grid.coord(1, j);
            for (int k = 0; k < nz; ++k) {
                x[2] = grid.dim() == 3 ? grid.coord(2, k) : 0.0;
                f.data_[idx++] = fn(x);
            }
        }
    }
    return f;
}

double ScalarField::max_abs() const noexcept {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
}

double ScalarField::mean() const noexcept {
    double s = 0.0;
    for (double v : data_) s += v;
    return data_.empty() ? 0.0 : s / static_cast<double>(data_.size());
}

double ScalarField::l2_norm() const noexcept {
    double s = 0.0;
    for (double v : data_) s += v * v;
    return std::sqrt(s * cell_volume(grid_));
}

bool ScalarField::finite() const noexcept {
    for (double v : data_)
        if (!std::isfinite(v)) return false;
    return true;
}

void ScalarField::require_finite(const char* what) const {
    if (!finite()) throw ContractViolation(std::string(what) + " contains non-finite values");
}

ScalarField& ScalarField::operator+=(const ScalarField& other) {
    check_same_grid(grid_, other.grid_);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
    check_same_grid(grid_, other.grid_);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

ScalarField& ScalarField::operator*=(double s) noexcept {
    for (double& v : data_) v *= s;
    return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }

VectorField::VectorField(const Grid& grid, double fill) : grid_(grid) {
    comps_.reserve(grid.dim());
    for (int a = 0; a < grid.dim(); ++a) comps_.emplace_back(grid, fill);
}

VectorField VectorField::sample(
    const Grid& grid,
    const std::function<std::array<double, kMaxDim>(const std::array<double, kMaxDim>&)>& fn) {
    VectorField f(grid);
    std::array<double, kMaxDim> x{};
    std::size_t idx = 0;
    const int nz = grid.dim() == 3 ? grid.n(2) : 1;
    for (int i = 0; i < grid.n(0); ++i) {
        x[0] = grid.coord(0, i);
        for (int j = 0; j < grid.n(1); ++j) {
            x[1] = grid.coord(1, j);
            for (int k = 0; k < nz; ++k) {
                x[2] = grid.dim() == 3 ? grid.coord(2, k) : 0.0;
                auto u = fn(x);
                for (int a = 0; a < grid.dim(); ++a) f.comps_[a][idx] = u[a];
                ++idx;
            }
        }
    }
    return f;
}

double VectorField::max_norm() const noexcept {
    double m = 0.0;
    for (std::size_t i = 0; i < grid_.size(); ++i) {
        double s = 0.0;
        for (int a = 0; a < grid_.dim(); ++a) s += comps_[a][i] * comps_[a][i];
        m = std::max(m, s);
    }
    return std::sqrt(m);
}

double VectorField::l2_norm() const noexcept {
    double s = 0.0;
    for (const auto& c : comps_) {
        double n = c.l2_norm();
        s += n * n;
    }
    return std::sqrt(s);
}

bool VectorField::finite() const noexcept {
    for (const auto& c : comps_)
        if (!c.finite()) return false;
    return true;
}

void VectorField::require_finite(const char* what) const {
    if (!finite()) throw ContractViolation(std::string(what) + " contains non-finite values");
}

VectorField& VectorField::operator+=(const VectorField& other) {
    check_same_grid(grid_, other.grid_);
    for (int a = 0; a < grid_.dim(); ++a) comps_[a] += other.comps_[a];
    return *this;
}

VectorField& VectorField::operator-=(const VectorField& other) {
    check_same_grid(grid_, other.grid_);
    for (int a = 0; a < grid_.dim(); ++a) comps_[a] -= other.comps_[a];
    return *this;
}

VectorField& VectorField::operator*=(double s) noexcept {
    for (auto& c : comps_) c *= s;
    return *this;
}

VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
VectorField operator*(double s, VectorField a) { return a *= s; }

double max_abs_diff(const ScalarField& a, const ScalarField& b) {
    check_same_grid(a.grid(), b.grid());
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

double max_abs_diff(const VectorField& a, const VectorField& b) {
    double m = 0.0;
    for (int c = 0; c < a.dim(); ++c) m = std::max(m, max_abs_diff(a.comp(c), b.comp(c)));
    return m;
}

double l2_diff(const ScalarField& a, const ScalarField& b) {
    ScalarField d = a;
    d -= b;
    return d.l2_norm();
}

double l2_diff(const VectorField& a, const VectorField& b) {
    VectorField d = a;
    d -= b;
    return d.l2_norm();
}

} // namespace pathwave
