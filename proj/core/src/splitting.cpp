#include "pathwave/splitting.hpp"

#include <cmath>
#include <complex>
#include <cstdio>

#include "pathwave/errors.hpp"
#include "pathwave/spectral.hpp"

namespace pathwave {

namespace {

using cplx = std::complex<double>;

/// Calls fn(flat_index, ktilde, ktilde_squared) for every mode, where ktilde
/// is the Nyquist-free derivative wavevector.
template <class Fn> void for_each_mode(const SpectralField& ref, Fn&& fn) {
    const Grid& g = ref.grid();
    if (g.dim() == 2) {
        for (int m0 = 0; m0 < g.n(0); ++m0) {
            const double k0 = ref.deriv_wavenumber(0, m0);
            for (int m1 = 0; m1 < g.n(1); ++m1) {
                const double k1 = ref.deriv_wavenumber(1, m1);
                const std::array<double, 3> k{k0, k1, 0.0};
                fn(static_cast<std::size_t>(g.flat(m0, m1)), k, k0 * k0 + k1 * k1);
            }
        }
    } else {
        for (int m0 = 0; m0 < g.n(0); ++m0) {
            const double k0 = ref.deriv_wavenumber(0, m0);
            for (int m1 = 0; m1 < g.n(1); ++m1) {
                const double k1 = ref.deriv_wavenumber(1, m1);
                for (int m2 = 0; m2 < g.n(2); ++m2) {
                    const double k2 = ref.deriv_wavenumber(2, m2);
                    const std::array<double, 3> k{k0, k1, k2};
                    fn(static_cast<std::size_t>(g.flat(m0, m1, m2)), k,
                       k0 * k0 + k1 * k1 + k2 * k2);
                }
            }
        }
    }
}

} // namespace

SplitVelocity helmholtz_split(const VectorField& u_prime) {
    u_prime.require_finite("velocity fluctuation");
    const Grid& g = u_prime.grid();
    const int dim = g.dim();

    SpectralVectorField uh = forward_transform(u_prime);
    SpectralVectorField ua_h;
    ua_h.comps.assign(dim, SpectralField(g));
    SpectralField phi_h(g);

    for_each_mode(uh.comps[0], [&](std::size_t idx, const std::array<double, 3>& k, double k2) {
        if (k2 == 0.0) return; // mean and pure-Nyquist modes stay vortical
        cplx dot{0.0, 0.0};
        for (int i = 0; i < dim; ++i) dot += k[i] * uh.comps[i][idx];
        const cplx proj = dot / k2;
        for (int i = 0; i < dim; ++i) {
            ua_h.comps[i][idx] = proj * k[i];
            uh.comps[i][idx] -= proj * k[i];
        }
        phi_h[idx] = cplx(0.0, -1.0) * proj;
    });

    SplitVelocity out;
    out.acoustic = inverse_transform(ua_h);
    out.vortical = inverse_transform(uh);
    out.potential = inverse_transform(phi_h);
    return out;
}

SplitCertificates split_certificates(const VectorField& u_prime, const SplitVelocity& split) {
    SplitCertificates c;
    c.curl_acoustic = curl_inf_norm(split.acoustic, DiffMethod::spectral);
    c.div_vortical = divergence(split.vortical, DiffMethod::spectral).max_abs();
    c.recombination = max_abs_diff(u_prime, split.acoustic + split.vortical);
    c.potential_residual =
        max_abs_diff(split.acoustic, gradient(split.potential, DiffMethod::spectral));
    return c;
}

namespace {

void check_acoustic_step_args(const ScalarField& p, const ScalarField& b, const BaseFlow& bf,
                              double t, double dt) {
    if (!(p.grid() == b.grid()) || !(p.grid() == bf.grid()))
        throw DimensionMismatch("acoustic pair and base flow live on different grids");
    p.require_finite("pressure fluctuation");
    b.require_finite("acoustic divergence");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ContractViolation("time step must be positive");
    if (t < -1e-12 || t + dt > bf.tau() * (1.0 + 1e-12))
        throw ContractViolation("time step leaves the base-flow window [0, tau]");
    const double vmax = std::max(
        {bf.max_speed_at(t), bf.max_speed_at(t + 0.5 * dt), bf.max_speed_at(t + dt)});
    const double cfl = dt * (vmax + bf.sound_speed()) / p.grid().min_spacing();
    if (cfl > 0.3 * (1.0 + 1e-12)) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "time step too large: dt (max|ubar|+c)/h = %.6g exceeds the limit 0.3", cfl);
        throw ContractViolation(buf);
    }
}

} // namespace

AcousticState acoustic_subsystem_step(const ScalarField& p_prime, const ScalarField& div_ua,
                                      const BaseFlow& bf, double t, double dt) {
    check_acoustic_step_args(p_prime, div_ua, bf, t, dt);
    const double rho = bf.rho_bar();
    const double c = bf.sound_speed();

    struct Pair {
        ScalarField p, b;
    };
    const auto rhs = [&](const Pair& s, double time) {
        const VectorField ub = bf.velocity_at(time);
        const VectorField gp = gradient(s.p, DiffMethod::spectral);
        const VectorField gb = gradient(s.b, DiffMethod::spectral);
        const ScalarField lap = laplacian(s.p, DiffMethod::spectral);
        Pair d{ScalarField(s.p.grid()), ScalarField(s.p.grid())};
        const int dim = ub.dim();
        for (std::size_t m = 0; m < d.p.size(); ++m) {
            double adv_p = 0.0, adv_b = 0.0;
            for (int i = 0; i < dim; ++i) {
                adv_p += ub.comp(i)[m] * gp.comp(i)[m];
                adv_b += ub.comp(i)[m] * gb.comp(i)[m];
            }
            d.p[m] = -adv_p - rho * c * c * s.b[m];
            d.b[m] = -adv_b - lap[m] / rho;
        }
        return d;
    };
    const auto add = [](const Pair& base, double a, const Pair& d) {
        Pair out = base;
        for (std::size_t m = 0; m < out.p.size(); ++m) {
            out.p[m] += a * d.p[m];
            out.b[m] += a * d.b[m];
        }
        return out;
    };

    const Pair s0{p_prime, div_ua};
    const Pair k1 = rhs(s0, t);
    const Pair k2 = rhs(add(s0, 0.5 * dt, k1), t + 0.5 * dt);
    const Pair k3 = rhs(add(s0, 0.5 * dt, k2), t + 0.5 * dt);
    const Pair k4 = rhs(add(s0, dt, k3), t + dt);

    AcousticState out{p_prime, div_ua};
    const double w = dt / 6.0;
    for (std::size_t m = 0; m < out.p_prime.size(); ++m) {
        out.p_prime[m] += w * (k1.p[m] + 2.0 * k2.p[m] + 2.0 * k3.p[m] + k4.p[m]);
        out.div_ua[m] += w * (k1.b[m] + 2.0 * k2.b[m] + 2.0 * k3.b[m] + k4.b[m]);
    }
    out.p_prime.require_finite("pressure fluctuation");
    out.div_ua.require_finite("acoustic divergence");
    return out;
}

VectorField acoustic_velocity_from_divergence(const ScalarField& div_ua) {
    div_ua.require_finite("acoustic divergence");
    const Grid& g = div_ua.grid();
    const int dim = g.dim();
    const SpectralField bh = forward_transform(div_ua);
    SpectralVectorField uh;
    uh.comps.assign(dim, SpectralField(g));
    for_each_mode(bh, [&](std::size_t idx, const std::array<double, 3>& k, double k2) {
        if (k2 == 0.0) return;
        const cplx v = cplx(0.0, -1.0) * bh[idx] / k2;
        for (int i = 0; i < dim; ++i) uh.comps[i][idx] = v * k[i];
    });
    return inverse_transform(uh);
}

VorticalResidual vortical_constraint_residual(const std::vector<VectorField>& u_v_series,
                                              const std::vector<VectorField>& u_a_series,
                                              const BaseFlow& bf, double t, double dt) {
    if (u_v_series.size() < 2 || u_a_series.size() < 2)
        throw ContractViolation("vortical constraint needs two consecutive samples of each part");
    const Grid& g = bf.grid();
    for (const VectorField* f :
         {&u_v_series[0], &u_v_series[1], &u_a_series[0], &u_a_series[1]}) {
        if (!(f->grid() == g))
            throw DimensionMismatch("velocity samples and base flow live on different grids");
        f->require_finite("velocity sample");
    }
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ContractViolation("time step must be positive");
    if (t < -1e-12 || t + dt > bf.tau() * (1.0 + 1e-12))
        throw ContractViolation("sample pair leaves the base-flow window [0, tau]");

    const int dim = g.dim();
    const VectorField ub = bf.velocity_at(t + 0.5 * dt);
    VectorField mid_v = u_v_series[0] + u_v_series[1];
    mid_v *= 0.5;
    VectorField mid_a = u_a_series[0] + u_a_series[1];
    mid_a *= 0.5;

    // Momentum-space residual F_j = d_t u_v,j + ubar.grad u_v,j
    //                              + d_i (u_a,j ubar_i); the constraint says
    // its curl vanishes.
    VectorField residual_momentum(g);
    for (int j = 0; j < dim; ++j) {
        ScalarField& rj = residual_momentum.comp(j);
        for (std::size_t m = 0; m < rj.size(); ++m)
            rj[m] = (u_v_series[1].comp(j)[m] - u_v_series[0].comp(j)[m]) / dt;
        const VectorField grad_vj = gradient(mid_v.comp(j), DiffMethod::spectral);
        for (int i = 0; i < dim; ++i)
            for (std::size_t m = 0; m < rj.size(); ++m)
                rj[m] += ub.comp(i)[m] * grad_vj.comp(i)[m];
        for (int i = 0; i < dim; ++i) {
            ScalarField prod(g);
            for (std::size_t m = 0; m < prod.size(); ++m)
                prod[m] = mid_a.comp(j)[m] * ub.comp(i)[m];
            rj += derivative(prod, i, DiffMethod::spectral);
        }
    }

    VorticalResidual out;
    if (dim == 2) {
        out.curl2 = curl2d(residual_momentum, DiffMethod::spectral);
        out.inf_norm = out.curl2.max_abs();
    } else {
        out.curl3 = curl3d(residual_momentum, DiffMethod::spectral);
        out.inf_norm = out.curl3.max_norm();
    }
    return out;
}

ProjectorSet spectral_projectors(const std::array<int, kMaxDim>& alpha,
                                 const std::array<double, kMaxDim>& u_bar, double rho_bar,
                                 double c, int dim) {
    if (dim != 2 && dim != 3) throw ContractViolation("spectral projectors need dim 2 or 3");
    if (!(rho_bar > 0.0) || !(c > 0.0))
        throw ContractViolation("background density and sound speed must be positive");
    for (int i = 0; i < dim; ++i)
        if (!std::isfinite(u_bar[i]))
            throw ContractViolation("background velocity must be finite");
    double norm2 = 0.0;
    for (int i = 0; i < dim; ++i) norm2 += double(alpha[i]) * alpha[i];
    if (norm2 == 0.0) throw ContractViolation("projectors are undefined at the zero wavevector");
    const double norm = std::sqrt(norm2);
    const int n = dim + 1;

    ProjectorSet ps;
    ps.dim = dim;
    ps.R = SmallMat(n);
    ps.Lambda = SmallMat(n);
    ps.I_a = SmallMat(n);
    ps.I_v = SmallMat::identity(n);
    ps.B = SmallMat(dim);
    ps.C = SmallMat::identity(dim);

    // Wave columns (1, +-alpha/(|alpha| c rho)); the +alpha column rides the
    // -|alpha|c branch because the symbol enters the resolvent negated.
    ps.R(0, 0) = 1.0;
    ps.R(0, 1) = 1.0;
    for (int i = 0; i < dim; ++i) {
        ps.R(i + 1, 0) = alpha[i] / (norm * c * rho_bar);
        ps.R(i + 1, 1) = -alpha[i] / (norm * c * rho_bar);
    }
    ps.Lambda(0, 0) = -norm * c;
    ps.Lambda(1, 1) = norm * c;

    // Shear columns (0, t). 2D: t = (alpha_2, -alpha_1). 3D: the same
    // pattern pivoted on the largest component so the basis never
    // degenerates: t_j = alpha_p e_j - alpha_j e_p for j != p.
    if (dim == 2) {
        ps.R(1, 2) = alpha[1];
        ps.R(2, 2) = -alpha[0];
    } else {
        int pivot = 0;
        for (int a = 1; a < dim; ++a)
            if (std::abs(alpha[a]) >= std::abs(alpha[pivot])) pivot = a;
        int col = 2;
        for (int j = 0; j < dim; ++j) {
            if (j == pivot) continue;
            ps.R(j + 1, col) = alpha[pivot];
            ps.R(pivot + 1, col) = -alpha[j];
            ++col;
        }
    }

    ps.I_a(0, 0) = 1.0;
    ps.I_a(1, 1) = 1.0;
    ps.I_v = ps.I_v - ps.I_a;

    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) ps.B(i, j) = alpha[i] * alpha[j] / norm2;
    ps.C = ps.C - ps.B;

    ps.R_inv = ps.R.inverse();
    ps.P_a = ps.R * ps.I_a * ps.R_inv;
    ps.P_v = ps.R * ps.I_v * ps.R_inv;

    // Consistency certificates: the assembled projectors must equal the
    // block forms diag(1, B) and diag(0, C).
    SmallMat block_a(n), block_v(n);
    block_a(0, 0) = 1.0;
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            block_a(i + 1, j + 1) = ps.B(i, j);
            block_v(i + 1, j + 1) = ps.C(i, j);
        }
    const double tol = 1e-10;
    if (max_abs_diff(ps.P_a, block_a) > tol || max_abs_diff(ps.P_v, block_v) > tol)
        throw ContractViolation("projector assembly failed its block-form certificate");
    if (max_abs_diff(ps.P_a * ps.P_a, ps.P_a) > tol)
        throw ContractViolation("acoustic projector is not idempotent");
    return ps;
}

} // namespace pathwave
