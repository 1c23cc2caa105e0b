#include "pathwave/smallmat.hpp"

#include <cmath>

#include "pathwave/errors.hpp"

namespace pathwave {

SmallMat SmallMat::identity(int n) {
    SmallMat m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

SmallMat SmallMat::operator*(const SmallMat& o) const {
    SmallMat r(n_);
    for (int i = 0; i < n_; ++i)
        for (int k = 0; k < n_; ++k) {
            const double aik = (*this)(i, k);
            for (int j = 0; j < n_; ++j) r(i, j) += aik * o(k, j);
        }
    return r;
}

SmallMat SmallMat::operator+(const SmallMat& o) const {
    SmallMat r(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) r(i, j) = (*this)(i, j) + o(i, j);
    return r;
}

SmallMat SmallMat::operator-(const SmallMat& o) const {
    SmallMat r(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) r(i, j) = (*this)(i, j) - o(i, j);
    return r;
}

SmallMat SmallMat::scaled(double s) const {
    SmallMat r(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) r(i, j) = (*this)(i, j) * s;
    return r;
}

SmallMat SmallMat::transposed() const {
    SmallMat r(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) r(i, j) = (*this)(j, i);
    return r;
}

SmallMat SmallMat::inverse() const {
    // Augmented Gauss-Jordan with partial pivoting.
    double aug[4][8];
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            aug[i][j] = (*this)(i, j);
            aug[i][n_ + j] = i == j ? 1.0 : 0.0;
        }
    for (int col = 0; col < n_; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n_; ++r)
            if (std::abs(aug[r][col]) > std::abs(aug[pivot][col])) pivot = r;
        if (std::abs(aug[pivot][col]) < 1e-300)
            throw ContractViolation("singular matrix in SmallMat::inverse");
        if (pivot != col)
            for (int j = 0; j < 2 * n_; ++j) std::swap(aug[pivot][j], aug[col][j]);
        const double inv = 1.0 / aug[col][col];
        for (int j = 0; j < 2 * n_; ++j) aug[col][j] *= inv;
        for (int r = 0; r < n_; ++r) {
            if (r == col) continue;
            const double f = aug[r][col];
            if (f == 0.0) continue;
            for (int j = 0; j < 2 * n_; ++j) aug[r][j] -= f * aug[col][j];
        }
    }
    SmallMat out(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) out(i, j) = aug[i][n_ + j];
    return out;
}

std::array<double, 4> SmallMat::apply(const std::array<double, 4>& v) const {
    std::array<double, 4> r{};
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
}

std::array<std::complex<double>, 4> SmallMat::apply(
    const std::array<std::complex<double>, 4>& v) const {
    std::array<std::complex<double>, 4> r{};
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
}

double SmallMat::max_abs() const noexcept {
    double m = 0.0;
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) m = std::max(m, std::abs((*this)(i, j)));
    return m;
}

bool SmallMat::symmetric(double tol) const noexcept {
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            if (std::abs((*this)(i, j) - (*this)(j, i)) > tol) return false;
    return true;
}

double max_abs_diff(const SmallMat& a, const SmallMat& b) {
    double m = 0.0;
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

} // namespace pathwave
