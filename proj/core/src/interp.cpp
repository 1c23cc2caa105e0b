#include "pathwave/interp.hpp"

#include <cmath>

namespace pathwave {

double interp1_limited(double fm1, double f0, double f1, double f2, double s) {
    const double wm1 = -s * (s - 1.0) * (s - 2.0) / 6.0;
    const double w0 = (s * s - 1.0) * (s - 2.0) / 2.0;
    const double w1 = -s * (s + 1.0) * (s - 2.0) / 2.0;
    const double w2 = s * (s * s - 1.0) / 6.0;
    double y = wm1 * fm1 + w0 * f0 + w1 * f1 + w2 * f2;

    const bool monotone = (fm1 <= f0 && f0 <= f1 && f1 <= f2) ||
                          (fm1 >= f0 && f0 >= f1 && f1 >= f2);
    const double d2l = f1 - 2.0 * f0 + fm1;
    const double d2r = f2 - 2.0 * f1 + f0;
    if (monotone || d2l * d2r < 0.0) {
        const double lo = std::min(f0, f1);
        const double hi = std::max(f0, f1);
        y = std::min(std::max(y, lo), hi);
    }
    return y;
}

namespace {

struct AxisPos {
    int base;  // lower node index, wrapped
    double s;  // fraction in [0, 1)
};

AxisPos split_axis(const Grid& g, int axis, double pos) {
    const double wrapped = pos - std::floor(pos / g.n(axis)) * g.n(axis);
    int base = static_cast<int>(std::floor(wrapped));
    double s = wrapped - base;
    if (base >= g.n(axis)) { // guard against wrapped == n from rounding
        base = 0;
        s = 0.0;
    }
    return {base, s};
}

} // namespace

double interp_field(const ScalarField& f, const std::array<double, kMaxDim>& pos_index) {
    const Grid& g = f.grid();
    const AxisPos p0 = split_axis(g, 0, pos_index[0]);
    const AxisPos p1 = split_axis(g, 1, pos_index[1]);

    if (g.dim() == 2) {
        double rows[4];
        for (int di = -1; di <= 2; ++di) {
            const int i = g.wrap(0, p0.base + di);
            rows[di + 1] = interp1_limited(f.at(i, g.wrap(1, p1.base - 1)),
                                           f.at(i, g.wrap(1, p1.base)),
                                           f.at(i, g.wrap(1, p1.base + 1)),
                                           f.at(i, g.wrap(1, p1.base + 2)), p1.s);
        }
        return interp1_limited(rows[0], rows[1], rows[2], rows[3], p0.s);
    }

    const AxisPos p2 = split_axis(g, 2, pos_index[2]);
    double planes[4];
    for (int di = -1; di <= 2; ++di) {
        const int i = g.wrap(0, p0.base + di);
        double rows[4];
        for (int dj = -1; dj <= 2; ++dj) {
            const int j = g.wrap(1, p1.base + dj);
            rows[dj + 1] = interp1_limited(f.at(i, j, g.wrap(2, p2.base - 1)),
                                           f.at(i, j, g.wrap(2, p2.base)),
                                           f.at(i, j, g.wrap(2, p2.base + 1)),
                                           f.at(i, j, g.wrap(2, p2.base + 2)), p2.s);
        }
        planes[di + 1] = interp1_limited(rows[0], rows[1], rows[2], rows[3], p1.s);
    }
    return interp1_limited(planes[0], planes[1], planes[2], planes[3], p0.s);
}

std::array<double, kMaxDim> interp_field(const VectorField& f,
                                         const std::array<double, kMaxDim>& pos_index) {
    std::array<double, kMaxDim> out{};
    for (int a = 0; a < f.dim(); ++a) out[a] = interp_field(f.comp(a), pos_index);
    return out;
}

} // namespace pathwave
