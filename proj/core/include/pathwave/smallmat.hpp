#pragma once

#include <array>
#include <complex>

namespace pathwave {

/// Dense square matrix of runtime size n <= 4, sized for the (d+1)x(d+1)
/// coefficient and projector algebra. Value type, row-major.
class SmallMat {
public:
    SmallMat() = default;
    explicit SmallMat(int n) : n_(n) { a_.fill(0.0); }

    static SmallMat identity(int n);

    int size() const noexcept { return n_; }
    double& operator()(int r, int c) noexcept { return a_[r * 4 + c]; }
    double operator()(int r, int c) const noexcept { return a_[r * 4 + c]; }

    SmallMat operator*(const SmallMat& o) const;
    SmallMat operator+(const SmallMat& o) const;
    SmallMat operator-(const SmallMat& o) const;
    SmallMat scaled(double s) const;
    SmallMat transposed() const;

    /// Gauss elimination with partial pivoting. Throws ContractViolation on
    /// a singular matrix.
    SmallMat inverse() const;

    std::array<double, 4> apply(const std::array<double, 4>& v) const;
    std::array<std::complex<double>, 4> apply(const std::array<std::complex<double>, 4>& v) const;

    double max_abs() const noexcept;
    bool symmetric(double tol) const noexcept;

private:
    int n_ = 0;
    std::array<double, 16> a_{};
};

double max_abs_diff(const SmallMat& a, const SmallMat& b);

} // namespace pathwave
