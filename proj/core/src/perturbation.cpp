#include "pathwave/perturbation.hpp"

#include <cmath>
#include <cstdio>

#include "pathwave/errors.hpp"
#include "pathwave/spectral.hpp"

namespace pathwave {

namespace {

double dot(const std::array<double, kMaxDim>& a, const std::array<double, kMaxDim>& b, int dim) {
    double s = 0.0;
    for (int i = 0; i < dim; ++i) s += a[i] * b[i];
    return s;
}

void require_unit(const std::array<double, kMaxDim>& nu, int dim) {
    const double n2 = dot(nu, nu, dim);
    if (std::abs(n2 - 1.0) > 1e-12)
        throw ContractViolation("direction vector must have unit length");
}

void require_background(double rho_bar, double c) {
    if (!(rho_bar > 0.0) || !std::isfinite(rho_bar))
        throw ContractViolation("background density must be positive");
    if (!(c > 0.0) || !std::isfinite(c))
        throw ContractViolation("sound speed must be positive");
}

/// Periodic one-cell shift: result[x] = f[x + dir * e_axis].
ScalarField shift1(const ScalarField& f, int axis, int dir) {
    const Grid& g = f.grid();
    ScalarField out(g);
    if (g.dim() == 2) {
        for (int i = 0; i < g.n(0); ++i)
            for (int j = 0; j < g.n(1); ++j) {
                const int si = axis == 0 ? g.wrap(0, i + dir) : i;
                const int sj = axis == 1 ? g.wrap(1, j + dir) : j;
                out.at(i, j) = f.at(si, sj);
            }
    } else {
        for (int i = 0; i < g.n(0); ++i)
            for (int j = 0; j < g.n(1); ++j)
                for (int k = 0; k < g.n(2); ++k) {
                    const int si = axis == 0 ? g.wrap(0, i + dir) : i;
                    const int sj = axis == 1 ? g.wrap(1, j + dir) : j;
                    const int sk = axis == 2 ? g.wrap(2, k + dir) : k;
                    out.at(i, j, k) = f.at(si, sj, sk);
                }
    }
    return out;
}

} // namespace

PerturbationState PerturbationState::zeros(const Grid& grid, double rho_bar, double c) {
    require_background(rho_bar, c);
    PerturbationState s;
    s.scaled_pressure = ScalarField(grid);
    s.momentum = VectorField(grid);
    s.rho_bar = rho_bar;
    s.c = c;
    return s;
}

PerturbationState PerturbationState::from_fluctuations(const ScalarField& p_prime,
                                                       const VectorField& u_prime, double rho_bar,
                                                       double c) {
    require_background(rho_bar, c);
    if (!(p_prime.grid() == u_prime.grid()))
        throw ContractViolation("pressure and velocity fluctuations live on different grids");
    PerturbationState s;
    s.rho_bar = rho_bar;
    s.c = c;
    s.scaled_pressure = p_prime;
    s.scaled_pressure *= 1.0 / (rho_bar * c * c);
    s.momentum = u_prime;
    s.momentum *= rho_bar;
    s.require_valid();
    return s;
}

ScalarField PerturbationState::p_prime() const {
    ScalarField p = scaled_pressure;
    p *= rho_bar * c * c;
    return p;
}

VectorField PerturbationState::u_prime() const {
    VectorField u = momentum;
    u *= 1.0 / rho_bar;
    return u;
}

ScalarField PerturbationState::rho_prime() const {
    ScalarField r = scaled_pressure;
    r *= rho_bar;
    return r;
}

void PerturbationState::require_valid() const {
    require_background(rho_bar, c);
    if (!(scaled_pressure.grid() == momentum.grid()))
        throw ContractViolation("perturbation components live on different grids");
    scaled_pressure.require_finite("scaled pressure");
    momentum.require_finite("momentum fluctuation");
}

PerturbationState make_initial_state(const FlowSnapshot& snapshot, const BaseFlow& bf) {
    if (!(snapshot.p.grid() == bf.grid()))
        throw DimensionMismatch("snapshot and base flow live on different grids");
    if (std::abs(snapshot.c - bf.sound_speed()) >
        1e-12 * std::max(1.0, std::abs(bf.sound_speed())))
        throw ContractViolation("snapshot and base flow disagree on the sound speed");
    ScalarField p_prime = snapshot.p;
    for (std::size_t i = 0; i < p_prime.size(); ++i) p_prime[i] -= bf.p_bar();
    VectorField u_prime = snapshot.u;
    u_prime -= bf.velocity_at(snapshot.t);
    return PerturbationState::from_fluctuations(p_prime, u_prime, bf.rho_bar(), bf.sound_speed());
}

SmallMat coefficient_matrix(const std::array<double, kMaxDim>& u_bar, double rho_bar, double c,
                            const std::array<double, kMaxDim>& nu, int dim) {
    if (dim != 2 && dim != 3) throw ContractViolation("coefficient matrix needs dim 2 or 3");
    require_background(rho_bar, c);
    require_unit(nu, dim);
    const int n = dim + 1;
    SmallMat a(n);
    const double un = dot(u_bar, nu, dim);
    for (int r = 0; r < n; ++r) a(r, r) = un;
    for (int i = 0; i < dim; ++i) {
        a(0, i + 1) += nu[i] / rho_bar;
        a(i + 1, 0) += nu[i] * rho_bar * c * c;
    }
    return a;
}

EigenSystem eigendecompose(const std::array<double, kMaxDim>& u_bar, double rho_bar, double c,
                           const std::array<double, kMaxDim>& nu, int dim) {
    if (dim != 2 && dim != 3) throw ContractViolation("eigendecomposition needs dim 2 or 3");
    require_background(rho_bar, c);
    require_unit(nu, dim);
    const int n = dim + 1;
    const double un = dot(u_bar, nu, dim);

    EigenSystem es;
    es.n = n;
    es.R = SmallMat(n);
    es.R_inv = SmallMat(n);
    es.lambda[0] = un - c;
    for (int j = 1; j < dim; ++j) es.lambda[j] = un;
    es.lambda[dim] = un + c;

    // Acoustic pair: columns (1, -+ c rho_bar nu), rows (1, -+ nu/(c rho_bar))/2.
    es.R(0, 0) = 1.0;
    es.R(0, dim) = 1.0;
    es.R_inv(0, 0) = 0.5;
    es.R_inv(dim, 0) = 0.5;
    for (int i = 0; i < dim; ++i) {
        es.R(i + 1, 0) = -c * rho_bar * nu[i];
        es.R(i + 1, dim) = c * rho_bar * nu[i];
        es.R_inv(0, i + 1) = -0.5 * nu[i] / (c * rho_bar);
        es.R_inv(dim, i + 1) = 0.5 * nu[i] / (c * rho_bar);
    }

    // Shear columns (0, t) with t orthogonal to nu, built on the largest
    // component of nu so the tangent basis stays well conditioned.
    int pivot = 0;
    for (int a = 1; a < dim; ++a)
        if (std::abs(nu[a]) > std::abs(nu[pivot])) pivot = a;

    double tangents[2][3] = {{0, 0, 0}, {0, 0, 0}};
    int count = 0;
    for (int j = 0; j < dim; ++j) {
        if (j == pivot) continue;
        tangents[count][j] = nu[pivot];
        tangents[count][pivot] = -nu[j];
        ++count;
    }
    for (int a = 0; a < count; ++a)
        for (int i = 0; i < dim; ++i) es.R(i + 1, 1 + a) = tangents[a][i];

    // Left shear rows are the dual basis of the tangents inside the plane
    // orthogonal to nu; their leading entry is zero, so they annihilate the
    // acoustic columns automatically.
    if (count == 1) {
        const double g = tangents[0][0] * tangents[0][0] + tangents[0][1] * tangents[0][1] +
                         tangents[0][2] * tangents[0][2];
        for (int i = 0; i < dim; ++i) es.R_inv(1, i + 1) = tangents[0][i] / g;
    } else if (count == 2) {
        double g00 = 0, g01 = 0, g11 = 0;
        for (int i = 0; i < 3; ++i) {
            g00 += tangents[0][i] * tangents[0][i];
            g01 += tangents[0][i] * tangents[1][i];
            g11 += tangents[1][i] * tangents[1][i];
        }
        const double det = g00 * g11 - g01 * g01;
        if (std::abs(det) < 1e-14)
            throw ContractViolation("degenerate shear tangent basis");
        for (int i = 0; i < dim; ++i) {
            es.R_inv(1, i + 1) = (g11 * tangents[0][i] - g01 * tangents[1][i]) / det;
            es.R_inv(2, i + 1) = (g00 * tangents[1][i] - g01 * tangents[0][i]) / det;
        }
    }
    return es;
}

namespace {

/// d+1 RHS fields for one stage, same layout as the state.
struct StageDeriv {
    ScalarField s;
    VectorField m;
};

StageDeriv rhs_central(const PerturbationState& u, const VectorField& ubar) {
    const Grid& g = u.grid();
    const int dim = g.dim();
    const double rc2 = u.rho_bar * u.c * u.c;
    StageDeriv out{ScalarField(g), VectorField(g)};
    for (int i = 0; i < dim; ++i) {
        ScalarField flux_s(g);
        const ScalarField& ui = ubar.comp(i);
        for (std::size_t m = 0; m < flux_s.size(); ++m)
            flux_s[m] = ui[m] * u.scaled_pressure[m] + u.momentum.comp(i)[m] / u.rho_bar;
        out.s -= derivative(flux_s, i, DiffMethod::spectral);
        for (int j = 0; j < dim; ++j) {
            ScalarField flux_m(g);
            for (std::size_t m = 0; m < flux_m.size(); ++m) {
                flux_m[m] = ui[m] * u.momentum.comp(j)[m];
                if (i == j) flux_m[m] += rc2 * u.scaled_pressure[m];
            }
            out.m.comp(j) -= derivative(flux_m, i, DiffMethod::spectral);
        }
    }
    return out;
}

StageDeriv rhs_upwind(const PerturbationState& u, const VectorField& ubar) {
    const Grid& g = u.grid();
    const int dim = g.dim();
    const double rho = u.rho_bar;
    const double c = u.c;
    StageDeriv out{ScalarField(g), VectorField(g)};
    for (int axis = 0; axis < dim; ++axis) {
        // Face between cell x and its +1 neighbor along `axis`, stored at x.
        const ScalarField wj = shift1(ubar.comp(axis), axis, +1);
        const ScalarField s1 = shift1(u.scaled_pressure, axis, +1);
        std::vector<ScalarField> mN(dim);
        for (int j = 0; j < dim; ++j) mN[j] = shift1(u.momentum.comp(j), axis, +1);

        ScalarField flux_s(g);
        VectorField flux_m(g);
        for (std::size_t m = 0; m < flux_s.size(); ++m) {
            const double w = 0.5 * (ubar.comp(axis)[m] + wj[m]);
            // Sum and jump of the conserved variables across the face.
            const double sum0 = u.scaled_pressure[m] + s1[m];
            const double jump0 = s1[m] - u.scaled_pressure[m];
            const double sumi = u.momentum.comp(axis)[m] + mN[axis][m];
            const double jumpi = mN[axis][m] - u.momentum.comp(axis)[m];
            // A(e_axis) applied to the sum.
            const double a_sum0 = w * sum0 + sumi / rho;
            const double a_sumi = w * sumi + rho * c * c * sum0;
            // |A(e_axis)| applied to the jump via characteristic variables
            // a_pm = (U1 +- M_axis/(c rho))/2 with speeds w -+ c; the shear
            // components ride along at speed w.
            const double am = 0.5 * (jump0 - jumpi / (c * rho));
            const double ap = 0.5 * (jump0 + jumpi / (c * rho));
            const double sm = std::abs(w - c);
            const double sp = std::abs(w + c);
            const double abs0 = sm * am + sp * ap;
            const double absi = c * rho * (sp * ap - sm * am);
            flux_s[m] = 0.5 * (a_sum0 - abs0);
            flux_m.comp(axis)[m] = 0.5 * (a_sumi - absi);
            for (int j = 0; j < dim; ++j) {
                if (j == axis) continue;
                const double sumj = u.momentum.comp(j)[m] + mN[j][m];
                const double jumpj = mN[j][m] - u.momentum.comp(j)[m];
                flux_m.comp(j)[m] = 0.5 * (w * sumj - std::abs(w) * jumpj);
            }
        }
        const double inv_h = 1.0 / g.spacing(axis);
        const ScalarField flux_s_left = shift1(flux_s, axis, -1);
        for (std::size_t m = 0; m < flux_s.size(); ++m)
            out.s[m] -= (flux_s[m] - flux_s_left[m]) * inv_h;
        for (int j = 0; j < dim; ++j) {
            const ScalarField left = shift1(flux_m.comp(j), axis, -1);
            for (std::size_t m = 0; m < flux_s.size(); ++m)
                out.m.comp(j)[m] -= (flux_m.comp(j)[m] - left[m]) * inv_h;
        }
    }
    return out;
}

PerturbationState add_scaled(const PerturbationState& base, double a, const StageDeriv& d) {
    PerturbationState out = base;
    for (std::size_t m = 0; m < out.scaled_pressure.size(); ++m)
        out.scaled_pressure[m] += a * d.s[m];
    for (int j = 0; j < out.dim(); ++j)
        for (std::size_t m = 0; m < out.scaled_pressure.size(); ++m)
            out.momentum.comp(j)[m] += a * d.m.comp(j)[m];
    return out;
}

} // namespace

PerturbationState step(const PerturbationState& state, const BaseFlow& bf, double t, double dt,
                       FluxMode mode) {
    state.require_valid();
    if (!(state.grid() == bf.grid()))
        throw DimensionMismatch("perturbation state and base flow live on different grids");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ContractViolation("time step must be positive");
    if (t < -1e-12 || t + dt > bf.tau() * (1.0 + 1e-12))
        throw ContractViolation("time step leaves the base-flow window [0, tau]");

    const double vmax = std::max({bf.max_speed_at(t), bf.max_speed_at(t + 0.5 * dt),
                                  bf.max_speed_at(t + dt)});
    const double cfl = dt * (vmax + state.c) / state.grid().min_spacing();
    const double limit = mode == FluxMode::upwind ? 0.5 : 0.3;
    if (cfl > limit * (1.0 + 1e-12)) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "time step too large: dt (max|ubar|+c)/h = %.6g exceeds the %s limit %.2g",
                      cfl, mode == FluxMode::upwind ? "upwind" : "central", limit);
        throw ContractViolation(buf);
    }

    const auto rhs = [&](const PerturbationState& u, double time) {
        const VectorField ubar = bf.velocity_at(time);
        return mode == FluxMode::central ? rhs_central(u, ubar) : rhs_upwind(u, ubar);
    };

    const StageDeriv k1 = rhs(state, t);
    const StageDeriv k2 = rhs(add_scaled(state, 0.5 * dt, k1), t + 0.5 * dt);
    const StageDeriv k3 = rhs(add_scaled(state, 0.5 * dt, k2), t + 0.5 * dt);
    const StageDeriv k4 = rhs(add_scaled(state, dt, k3), t + dt);

    PerturbationState out = state;
    const double w = dt / 6.0;
    for (std::size_t m = 0; m < out.scaled_pressure.size(); ++m)
        out.scaled_pressure[m] += w * (k1.s[m] + 2.0 * k2.s[m] + 2.0 * k3.s[m] + k4.s[m]);
    for (int j = 0; j < out.dim(); ++j)
        for (std::size_t m = 0; m < out.scaled_pressure.size(); ++m)
            out.momentum.comp(j)[m] +=
                w * (k1.m.comp(j)[m] + 2.0 * k2.m.comp(j)[m] + 2.0 * k3.m.comp(j)[m] +
                     k4.m.comp(j)[m]);
    out.require_valid();
    return out;
}

ScaleResidual residual_ma_re(const FlowProvider& provider) {
    ScaleResidual r;
    r.mach = provider.mach();
    r.reynolds = provider.reynolds();
    if (!(r.reynolds > 0.0) || !std::isfinite(r.reynolds))
        throw ContractViolation("Reynolds number must be positive");
    if (!(r.mach >= 0.0) || !std::isfinite(r.mach))
        throw ContractViolation("Mach number must be non-negative");
    r.ma_over_re = r.mach / r.reynolds;
    return r;
}

} // namespace pathwave
