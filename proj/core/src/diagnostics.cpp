#include "pathwave/diagnostics.hpp"

#include <cmath>
#include <limits>

#include "pathwave/errors.hpp"
#include "pathwave/spectral.hpp"
#include "pathwave/splitting.hpp"

namespace pathwave {

SmallMat SymmetrizerSet::directional(int axis, std::size_t cell) const {
    SmallMat m = A0.scaled(ubar.comp(axis)[cell]);
    return m + coupling[axis];
}

Symmetrized symmetrize(const PerturbationState& state, const BaseFlow& bf, double t) {
    state.require_valid();
    if (!(state.grid() == bf.grid()))
        throw DimensionMismatch("perturbation state and base flow live on different grids");
    const int dim = state.dim();
    const int n = dim + 1;
    const double rho = state.rho_bar;
    const double c = state.c;

    Symmetrized out;
    out.V.v1 = state.scaled_pressure;
    out.V.v1 *= rho * rho * c * c;
    out.V.vu = state.momentum;

    out.mats.A0 = SmallMat(n);
    out.mats.A0(0, 0) = 1.0 / (rho * rho * c * c);
    for (int j = 1; j < n; ++j) out.mats.A0(j, j) = 1.0;
    for (int i = 0; i < dim; ++i) {
        SmallMat k(n);
        k(0, i + 1) = 1.0 / rho;
        k(i + 1, 0) = 1.0 / rho;
        out.mats.coupling.push_back(k);
    }
    out.mats.ubar = bf.velocity_at(t);

    if (!out.mats.A0.symmetric(1e-14))
        throw ContractViolation("time symmetrizer is not symmetric");
    for (int i = 0; i < dim; ++i) {
        double umin = 0.0, umax = 0.0;
        const ScalarField& ui = out.mats.ubar.comp(i);
        for (std::size_t m = 0; m < ui.size(); ++m) {
            umin = std::min(umin, ui[m]);
            umax = std::max(umax, ui[m]);
        }
        // A_i is affine in ubar_i, so symmetry at the extreme values implies
        // symmetry at every cell.
        for (double u : {umin, umax}) {
            SmallMat m = out.mats.A0.scaled(u) + out.mats.coupling[i];
            if (!m.symmetric(1e-14))
                throw ContractViolation("directional symmetrizer is not symmetric");
        }
    }
    return out;
}

ScalarField energy_density(const PerturbationState& state) {
    state.require_valid();
    const double rho = state.rho_bar;
    const double c = state.c;
    const double w1 = rho * rho * c * c; // eta = (w1 U1^2 + |M|^2)/2
    ScalarField eta(state.grid());
    for (std::size_t m = 0; m < eta.size(); ++m) {
        double s = w1 * state.scaled_pressure[m] * state.scaled_pressure[m];
        for (int j = 0; j < state.dim(); ++j) {
            const double mj = state.momentum.comp(j)[m];
            s += mj * mj;
        }
        eta[m] = 0.5 * s;
    }
    return eta;
}

VectorField energy_flux(const PerturbationState& state, const BaseFlow& bf, double t) {
    if (!(state.grid() == bf.grid()))
        throw DimensionMismatch("perturbation state and base flow live on different grids");
    const ScalarField eta = energy_density(state);
    const ScalarField p = state.p_prime();
    const VectorField ub = bf.velocity_at(t);
    VectorField q(state.grid());
    for (int i = 0; i < state.dim(); ++i)
        for (std::size_t m = 0; m < eta.size(); ++m)
            q.comp(i)[m] = eta[m] * ub.comp(i)[m] + p[m] * state.momentum.comp(i)[m];
    return q;
}

namespace {

double cell_volume(const Grid& g) {
    double v = 1.0;
    for (int a = 0; a < g.dim(); ++a) v *= g.spacing(a);
    return v;
}

} // namespace

EnergyReport conservation_drift(const std::vector<double>& times,
                                const std::vector<PerturbationState>& trajectory) {
    if (times.size() != trajectory.size())
        throw ContractViolation("energy report needs one time per stored state");
    EnergyReport rep;
    rep.times = times;
    for (const PerturbationState& s : trajectory) {
        const double vol = cell_volume(s.grid());
        const double rho = s.rho_bar;
        const double c = s.c;

        double eta_sum = 0.0;
        const ScalarField eta = energy_density(s);
        for (std::size_t m = 0; m < eta.size(); ++m) eta_sum += eta[m];
        rep.total_eta.push_back(eta_sum * vol);

        const ScalarField p = s.p_prime();
        const SplitVelocity split = helmholtz_split(s.u_prime());
        double ac = 0.0, vo = 0.0;
        for (std::size_t m = 0; m < p.size(); ++m) {
            double ua2 = 0.0, uv2 = 0.0;
            for (int j = 0; j < s.dim(); ++j) {
                ua2 += split.acoustic.comp(j)[m] * split.acoustic.comp(j)[m];
                uv2 += split.vortical.comp(j)[m] * split.vortical.comp(j)[m];
            }
            ac += 0.5 * (p[m] * p[m] / (c * c) + rho * rho * ua2);
            vo += 0.5 * rho * rho * uv2;
        }
        rep.total_acoustic.push_back(ac * vol);
        rep.total_vortical.push_back(vo * vol);
    }
    const double ref = rep.total_eta.empty() ? 0.0 : rep.total_eta.front();
    const double den = std::max(std::abs(ref), std::numeric_limits<double>::min());
    for (double e : rep.total_eta) rep.drift.push_back((e - ref) / den);
    return rep;
}

IntensityField intensity(const std::vector<double>& times,
                         const std::vector<PerturbationState>& trajectory, const BaseFlow& bf,
                         std::size_t window_samples) {
    if (times.size() != trajectory.size())
        throw ContractViolation("intensity needs one time per stored state");
    if (window_samples < 2) throw ContractViolation("averaging window needs at least two samples");
    if (window_samples > trajectory.size())
        throw ContractViolation("averaging window exceeds the stored trajectory");
    const double dt = times[1] - times[0];
    if (!(dt > 0.0)) throw ContractViolation("stored times must increase");
    for (std::size_t i = 1; i < window_samples; ++i)
        if (std::abs(times[i] - times[i - 1] - dt) > 1e-9 * std::max(1.0, std::abs(dt)))
            throw ContractViolation("intensity window needs uniformly spaced samples");

    const Grid& g = bf.grid();
    VectorField sum(g);
    for (std::size_t k = 0; k < window_samples; ++k) {
        const PerturbationState& s = trajectory[k];
        if (!(s.grid() == g))
            throw DimensionMismatch("trajectory and base flow live on different grids");
        const double rho = s.rho_bar;
        const double c = s.c;
        const ScalarField p = s.p_prime();
        const VectorField ub = bf.velocity_at(times[k]);
        for (std::size_t m = 0; m < p.size(); ++m) {
            double e = p[m] * p[m] / (rho * c * c);
            for (int j = 0; j < s.dim(); ++j) {
                const double uj = s.momentum.comp(j)[m] / rho;
                e += rho * uj * uj;
            }
            e *= 0.5;
            for (int i = 0; i < s.dim(); ++i)
                sum.comp(i)[m] += e * ub.comp(i)[m] + p[m] * s.momentum.comp(i)[m] / rho;
        }
    }
    IntensityField out;
    sum *= 1.0 / static_cast<double>(window_samples);
    out.I = sum;
    out.window = static_cast<double>(window_samples) * dt;
    out.div_norm = divergence(out.I, DiffMethod::spectral).max_abs();
    return out;
}

namespace {

double guarded_ratio(double num, double den) {
    if (den == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return num / den;
}

} // namespace

ScaleReport scale_separation(const FlowProvider& provider, const BaseFlow& bf, double t) {
    const FlowSnapshot snap = sample_flow(provider, bf.grid(), t);
    const VectorField ub = bf.velocity_at(t);

    double rho_max = 0.0, p_max = 0.0, u_max = 0.0, ub_max = 0.0;
    for (std::size_t m = 0; m < snap.rho.size(); ++m) {
        rho_max = std::max(rho_max, std::abs(snap.rho[m] - bf.rho_bar()));
        p_max = std::max(p_max, std::abs(snap.p[m] - bf.p_bar()));
        double du2 = 0.0, ub2 = 0.0;
        for (int j = 0; j < bf.grid().dim(); ++j) {
            const double d = snap.u.comp(j)[m] - ub.comp(j)[m];
            du2 += d * d;
            ub2 += ub.comp(j)[m] * ub.comp(j)[m];
        }
        u_max = std::max(u_max, std::sqrt(du2));
        ub_max = std::max(ub_max, std::sqrt(ub2));
    }

    ScaleReport rep;
    rep.rho_ratio = guarded_ratio(rho_max, bf.rho_bar());
    rep.u_ratio = guarded_ratio(u_max, ub_max);
    rep.p_ratio = guarded_ratio(p_max, std::abs(bf.p_bar()));
    rep.fluct_mach = u_max / bf.sound_speed();
    return rep;
}

} // namespace pathwave
