#pragma once

#include <functional>
#include <vector>

#include "pathwave/grid.hpp"

namespace pathwave {

/// One double per cell, row-major (last axis fastest).
class ScalarField {
public:
    ScalarField() = default;
    explicit ScalarField(const Grid& grid, double fill = 0.0);

    /// Evaluates fn at every cell center. fn receives the coordinates with
    /// unused trailing entries zero.
    static ScalarField sample(const Grid& grid,
                              const std::function<double(const std::array<double, kMaxDim>&)>& fn);

    const Grid& grid() const noexcept { return grid_; }
    std::size_t size() const noexcept { return data_.size(); }

    double* data() noexcept { return data_.data(); }
    const double* data() const noexcept { return data_.data(); }
    double& operator[](std::size_t i) noexcept { return data_[i]; }
    double operator[](std::size_t i) const noexcept { return data_[i]; }

    double& at(int i, int j) { return data_[grid_.flat(i, j)]; }
    double at(int i, int j) const { return data_[grid_.flat(i, j)]; }
    double& at(int i, int j, int k) { return data_[grid_.flat(i, j, k)]; }
    double at(int i, int j, int k) const { return data_[grid_.flat(i, j, k)]; }

    double max_abs() const noexcept;
    double mean() const noexcept;
    /// L2 norm weighted by cell volume: sqrt(sum f^2 * h1*...*hd).
    double l2_norm() const noexcept;
    bool finite() const noexcept;

    /// Throws ContractViolation when any value is non-finite. `what` names
    /// the offending input in the message.
    void require_finite(const char* what) const;

    ScalarField& operator+=(const ScalarField& other);
    ScalarField& operator-=(const ScalarField& other);
    ScalarField& operator*=(double s) noexcept;

private:
    Grid grid_;
    std::vector<double> data_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double s, ScalarField a);

/// dim scalar components sharing one grid.
class VectorField {
public:
    VectorField() = default;
    explicit VectorField(const Grid& grid, double fill = 0.0);

    static VectorField sample(
        const Grid& grid,
        const std::function<std::array<double, kMaxDim>(const std::array<double, kMaxDim>&)>& fn);

    const Grid& grid() const noexcept { return grid_; }
    int dim() const noexcept { return grid_.dim(); }

    ScalarField& comp(int a) { return comps_[a]; }
    const ScalarField& comp(int a) const { return comps_[a]; }

    /// Largest pointwise Euclidean norm over cells.
    double max_norm() const noexcept;
    double l2_norm() const noexcept;
    bool finite() const noexcept;
    void require_finite(const char* what) const;

    VectorField& operator+=(const VectorField& other);
    VectorField& operator-=(const VectorField& other);
    VectorField& operator*=(double s) noexcept;

private:
    Grid grid_;
    std::vector<ScalarField> comps_;
};

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(double s, VectorField a);

/// max over cells of |a - b|.
double max_abs_diff(const ScalarField& a, const ScalarField& b);
double max_abs_diff(const VectorField& a, const VectorField& b);

/// Volume-weighted L2 distance.
double l2_diff(const ScalarField& a, const ScalarField& b);
double l2_diff(const VectorField& a, const VectorField& b);

} // namespace pathwave
