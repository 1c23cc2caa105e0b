#include "pathwave/spectral.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

#include "pathwave/errors.hpp"

namespace pathwave {

namespace {

// FFTW plan creation is not thread-safe; execution on distinct arrays is.
// Plans are cached per (shape, direction) and created with FFTW_UNALIGNED so
// they can execute on any heap buffer via fftw_execute_dft.
class PlanCache {
public:
    static fftw_plan get(const Grid& g, int sign) {
        static PlanCache cache;
        std::scoped_lock lock(cache.mutex_);
        Key key{g.dim(), g.n(0), g.n(1), g.dim() == 3 ? g.n(2) : 1, sign};
        auto it = cache.plans_.find(key);
        if (it != cache.plans_.end()) return it->second;

        std::vector<std::complex<double>> a(g.size()), b(g.size());
        auto* in = reinterpret_cast<fftw_complex*>(a.data());
        auto* out = reinterpret_cast<fftw_complex*>(b.data());
        fftw_plan plan = g.dim() == 2
            ? fftw_plan_dft_2d(g.n(0), g.n(1), in, out, sign, FFTW_ESTIMATE | FFTW_UNALIGNED)
            : fftw_plan_dft_3d(g.n(0), g.n(1), g.n(2), in, out, sign,
                               FFTW_ESTIMATE | FFTW_UNALIGNED);
        cache.plans_.emplace(key, plan);
        return plan;
    }

private:
    using Key = std::tuple<int, int, int, int, int>;
    std::mutex mutex_;
    std::map<Key, fftw_plan> plans_;
};

void execute(const Grid& g, int sign, std::complex<double>* in, std::complex<double>* out) {
    fftw_plan plan = PlanCache::get(g, sign);
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(in),
                     reinterpret_cast<fftw_complex*>(out));
}

// Applies op(k0, k1, k2) as a pointwise complex multiplier, where the k are
// derivative wavenumbers (Nyquist zeroed).
template <class Op>
void for_each_mode(SpectralField& f, Op&& op) {
    const Grid& g = f.grid();
    const int nz = g.dim() == 3 ? g.n(2) : 1;
    std::size_t idx = 0;
    for (int i = 0; i < g.n(0); ++i) {
        const double k0 = f.deriv_wavenumber(0, i);
        for (int j = 0; j < g.n(1); ++j) {
            const double k1 = f.deriv_wavenumber(1, j);
            for (int k = 0; k < nz; ++k) {
                const double k2 = g.dim() == 3 ? f.deriv_wavenumber(2, k) : 0.0;
                op(f[idx], k0, k1, k2);
                ++idx;
            }
        }
    }
}

ScalarField spectral_axis_derivative(const ScalarField& f, int axis) {
    SpectralField c = forward_transform(f);
    for_each_mode(c, [axis](std::complex<double>& v, double k0, double k1, double k2) {
        const double k = axis == 0 ? k0 : (axis == 1 ? k1 : k2);
        v *= std::complex<double>(0.0, k);
    });
    return inverse_transform(c);
}

ScalarField central_axis_derivative(const ScalarField& f, int axis, DiffMethod method) {
    const Grid& g = f.grid();
    ScalarField out(g);
    const double h = g.spacing(axis);
    const int nz = g.dim() == 3 ? g.n(2) : 1;

    auto value = [&](int i, int j, int k) {
        return g.dim() == 3 ? f.at(i, j, k) : f.at(i, j);
    };
    auto shifted = [&](int i, int j, int k, int off) {
        int idx[3] = {i, j, k};
        idx[axis] = g.wrap(axis, idx[axis] + off);
        return value(idx[0], idx[1], idx[2]);
    };

    std::size_t idx = 0;
    for (int i = 0; i < g.n(0); ++i)
        for (int j = 0; j < g.n(1); ++j)
            for (int k = 0; k < nz; ++k) {
                double d;
                if (method == DiffMethod::central2) {
                    d = (shifted(i, j, k, +1) - shifted(i, j, k, -1)) / (2.0 * h);
                } else {
                    d = (-shifted(i, j, k, +2) + 8.0 * shifted(i, j, k, +1) -
                         8.0 * shifted(i, j, k, -1) + shifted(i, j, k, -2)) /
                        (12.0 * h);
                }
                out[idx++] = d;
            }
    return out;
}

} // namespace

SpectralField forward_transform(const ScalarField& f) {
    f.require_finite("transform input");
    const Grid& g = f.grid();
    std::vector<std::complex<double>> in(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) in[i] = f[i];
    SpectralField out(g);
    execute(g, FFTW_FORWARD, in.data(), out.data());
    const double scale = 1.0 / static_cast<double>(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) out[i] *= scale;
    return out;
}

ScalarField inverse_transform(const SpectralField& f) {
    const Grid& g = f.grid();
    std::vector<std::complex<double>> in(f.data(), f.data() + g.size());
    std::vector<std::complex<double>> out(g.size());
    execute(g, FFTW_BACKWARD, in.data(), out.data());
    // Hermitian inputs leave only a roundoff-level imaginary residue.
    ScalarField r(g);
    for (std::size_t i = 0; i < g.size(); ++i) r[i] = out[i].real();
    return r;
}

SpectralVectorField forward_transform(const VectorField& f) {
    SpectralVectorField out;
    out.comps.reserve(f.dim());
    for (int a = 0; a < f.dim(); ++a) out.comps.push_back(forward_transform(f.comp(a)));
    return out;
}

VectorField inverse_transform(const SpectralVectorField& f) {
    VectorField out(f.grid());
    for (int a = 0; a < f.dim(); ++a) out.comp(a) = inverse_transform(f.comps[a]);
    return out;
}

ScalarField derivative(const ScalarField& f, int axis, DiffMethod method) {
    if (axis < 0 || axis >= f.grid().dim())
        throw ContractViolation("derivative axis out of range");
    if (method == DiffMethod::spectral) return spectral_axis_derivative(f, axis);
    return central_axis_derivative(f, axis, method);
}

VectorField gradient(const ScalarField& f, DiffMethod method) {
    VectorField out(f.grid());
    if (method == DiffMethod::spectral) {
        // One analysis, d syntheses.
        SpectralField c = forward_transform(f);
        for (int a = 0; a < f.grid().dim(); ++a) {
            SpectralField da = c;
            for_each_mode(da, [a](std::complex<double>& v, double k0, double k1, double k2) {
                const double k = a == 0 ? k0 : (a == 1 ? k1 : k2);
                v *= std::complex<double>(0.0, k);
            });
            out.comp(a) = inverse_transform(da);
        }
        return out;
    }
    for (int a = 0; a < f.grid().dim(); ++a) out.comp(a) = derivative(f, a, method);
    return out;
}

ScalarField divergence(const VectorField& v, DiffMethod method) {
    ScalarField out(v.grid());
    for (int a = 0; a < v.dim(); ++a) out += derivative(v.comp(a), a, method);
    return out;
}

ScalarField laplacian(const ScalarField& f, DiffMethod method) {
    if (method == DiffMethod::spectral) {
        // Multiplier -|k|^2 with the same derivative wavenumbers as
        // gradient/divergence, so laplacian == divergence(gradient(.))
        // holds exactly mode by mode.
        SpectralField c = forward_transform(f);
        for_each_mode(c, [](std::complex<double>& v, double k0, double k1, double k2) {
            v *= -(k0 * k0 + k1 * k1 + k2 * k2);
        });
        return inverse_transform(c);
    }
    ScalarField out(f.grid());
    for (int a = 0; a < f.grid().dim(); ++a)
        out += derivative(derivative(f, a, method), a, method);
    return out;
}

VectorField laplacian(const VectorField& v, DiffMethod method) {
    VectorField out(v.grid());
    for (int a = 0; a < v.dim(); ++a) out.comp(a) = laplacian(v.comp(a), method);
    return out;
}

ScalarField curl2d(const VectorField& v, DiffMethod method) {
    if (v.dim() != 2) throw ContractViolation("curl2d requires a 2-component field");
    ScalarField out = derivative(v.comp(1), 0, method);
    out -= derivative(v.comp(0), 1, method);
    return out;
}

VectorField curl3d(const VectorField& v, DiffMethod method) {
    if (v.dim() != 3) throw ContractViolation("curl3d requires a 3-component field");
    VectorField out(v.grid());
    out.comp(0) = derivative(v.comp(2), 1, method) - derivative(v.comp(1), 2, method);
    out.comp(1) = derivative(v.comp(0), 2, method) - derivative(v.comp(2), 0, method);
    out.comp(2) = derivative(v.comp(1), 0, method) - derivative(v.comp(0), 1, method);
    return out;
}

double curl_inf_norm(const VectorField& v, DiffMethod method) {
    if (v.dim() == 2) return curl2d(v, method).max_abs();
    return curl3d(v, method).max_norm();
}

void apply_two_thirds_truncation(SpectralField& f) {
    const Grid& g = f.grid();
    const int nz = g.dim() == 3 ? g.n(2) : 1;
    std::size_t idx = 0;
    for (int i = 0; i < g.n(0); ++i) {
        const bool cut0 = 3 * std::abs(f.freq(0, i)) > g.n(0);
        for (int j = 0; j < g.n(1); ++j) {
            const bool cut1 = 3 * std::abs(f.freq(1, j)) > g.n(1);
            for (int k = 0; k < nz; ++k) {
                const bool cut2 = g.dim() == 3 && 3 * std::abs(f.freq(2, k)) > g.n(2);
                if (cut0 || cut1 || cut2) f[idx] = {0.0, 0.0};
                ++idx;
            }
        }
    }
}

double physical_power(const ScalarField& f) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * f[i];
    return s / static_cast<double>(f.size());
}

double spectral_power(const SpectralField& f) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += std::norm(f[i]);
    return s;
}

} // namespace pathwave
