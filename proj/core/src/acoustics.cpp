#include "pathwave/acoustics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "pathwave/errors.hpp"
#include "pathwave/perturbation.hpp"
#include "pathwave/spectral.hpp"
#include "pathwave/splitting.hpp"

namespace pathwave {

namespace {

/// Sum over i <= j of (2 - delta_ij) d_i d_j w_ij for the symmetric tensor
/// w_ij supplied by `entry(i, j)`, with each product dealiased before the
/// derivatives are taken.
template <class Entry> ScalarField double_divergence(const Grid& g, Entry&& entry) {
    ScalarField out(g);
    for (int i = 0; i < g.dim(); ++i) {
        for (int j = i; j < g.dim(); ++j) {
            ScalarField w = entry(i, j);
            SpectralField wh = forward_transform(w);
            apply_two_thirds_truncation(wh);
            w = inverse_transform(wh);
            ScalarField dd = derivative(derivative(w, i, DiffMethod::spectral), j,
                                        DiffMethod::spectral);
            if (i != j) dd *= 2.0;
            out += dd;
        }
    }
    return out;
}

void check_source_mean(const SourceField& src) {
    const double scale = std::max(1.0, src.s.max_abs());
    if (std::abs(src.s.mean()) > 1e-10 * scale)
        throw ContractViolation("wave source has a non-zero spatial mean");
}

} // namespace

SourceField lighthill_source(const FlowSnapshot& snapshot) {
    snapshot.rho.require_finite("density");
    snapshot.u.require_finite("velocity");
    if (!(snapshot.rho.grid() == snapshot.u.grid()))
        throw DimensionMismatch("snapshot fields live on different grids");
    SourceField src;
    src.kind = SourceKind::lighthill;
    src.t = snapshot.t;
    src.s = double_divergence(snapshot.u.grid(), [&](int i, int j) {
        ScalarField w(snapshot.rho.grid());
        for (std::size_t m = 0; m < w.size(); ++m)
            w[m] = snapshot.rho[m] * snapshot.u.comp(i)[m] * snapshot.u.comp(j)[m];
        return w;
    });
    check_source_mean(src);
    return src;
}

SourceField true_source(const VectorField& u_prime, double rho_bar, double t) {
    u_prime.require_finite("velocity fluctuation");
    if (!(rho_bar > 0.0) || !std::isfinite(rho_bar))
        throw ContractViolation("background density must be positive");
    SourceField src;
    src.kind = SourceKind::true_source;
    src.t = t;
    src.s = double_divergence(u_prime.grid(), [&](int i, int j) {
        ScalarField w(u_prime.grid());
        for (std::size_t m = 0; m < w.size(); ++m)
            w[m] = rho_bar * u_prime.comp(i)[m] * u_prime.comp(j)[m];
        return w;
    });
    check_source_mean(src);
    return src;
}

namespace {

/// Piecewise-linear time interpolation over a source series. An empty
/// series means "identically zero".
class SourceTimeline {
public:
    SourceTimeline(const std::vector<SourceField>& sources, const Grid& grid, double T)
        : sources_(&sources), grid_(grid) {
        if (sources.empty()) return;
        for (std::size_t i = 0; i < sources.size(); ++i) {
            if (!(sources[i].s.grid() == grid))
                throw DimensionMismatch("source fields live on a different grid");
            if (i > 0 && !(sources[i].t > sources[i - 1].t))
                throw ContractViolation("source times must be strictly increasing");
            check_source_mean(sources[i]);
        }
        const double tol = 1e-9 * std::max(1.0, std::abs(T));
        if (sources.front().t > tol || sources.back().t < T - tol)
            throw ContractViolation("source series does not cover the whole time span");
    }

    bool empty() const { return sources_->empty(); }

    ScalarField at(double t) const {
        const auto& s = *sources_;
        if (s.empty()) return ScalarField(grid_);
        if (t <= s.front().t) return s.front().s;
        if (t >= s.back().t) return s.back().s;
        std::size_t hi = 1;
        while (s[hi].t < t) ++hi;
        const double w = (t - s[hi - 1].t) / (s[hi].t - s[hi - 1].t);
        ScalarField out = s[hi - 1].s;
        out *= 1.0 - w;
        ScalarField right = s[hi].s;
        right *= w;
        out += right;
        return out;
    }

private:
    const std::vector<SourceField>* sources_;
    Grid grid_;
};

struct WavePair {
    ScalarField p, q;
};

} // namespace

WaveSolution solve_convective_wave(const ScalarField& p0, const ScalarField& p0_rate,
                                   const BaseFlow& bf, const std::vector<SourceField>& sources,
                                   double T, double dt, const std::vector<double>& sample_times,
                                   Propagation propagation) {
    const Grid& g = bf.grid();
    if (!(p0.grid() == g) || !(p0_rate.grid() == g))
        throw DimensionMismatch("initial data and base flow live on different grids");
    p0.require_finite("initial pressure");
    p0_rate.require_finite("initial pressure rate");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ContractViolation("time step must be positive");
    if (!(T >= 0.0) || !std::isfinite(T)) throw ContractViolation("time span must be non-negative");
    if (T > bf.tau() * (1.0 + 1e-12))
        throw ContractViolation("time span exceeds the base-flow window [0, tau]");
    const double ttol = 1e-9 * std::max(1.0, T);
    for (std::size_t i = 0; i < sample_times.size(); ++i) {
        if (sample_times[i] < -ttol || sample_times[i] > T + ttol)
            throw ContractViolation("sample time outside [0, T]");
        if (i > 0 && !(sample_times[i] > sample_times[i - 1]))
            throw ContractViolation("sample times must be strictly increasing");
    }

    const SourceTimeline timeline(sources, g, T);
    const double c = bf.sound_speed();
    const bool convect = propagation == Propagation::convective;

    const auto rhs = [&](const WavePair& s, double time) {
        const ScalarField lap = laplacian(s.p, DiffMethod::spectral);
        WavePair d{ScalarField(g), ScalarField(g)};
        if (convect) {
            const VectorField ub = bf.velocity_at(time);
            const VectorField gp = gradient(s.p, DiffMethod::spectral);
            const VectorField gq = gradient(s.q, DiffMethod::spectral);
            for (std::size_t m = 0; m < d.p.size(); ++m) {
                double adv_p = 0.0, adv_q = 0.0;
                for (int i = 0; i < g.dim(); ++i) {
                    adv_p += ub.comp(i)[m] * gp.comp(i)[m];
                    adv_q += ub.comp(i)[m] * gq.comp(i)[m];
                }
                d.p[m] = -adv_p + c * c * s.q[m];
                d.q[m] = -adv_q + lap[m];
            }
        } else {
            for (std::size_t m = 0; m < d.p.size(); ++m) {
                d.p[m] = c * c * s.q[m];
                d.q[m] = lap[m];
            }
        }
        if (!timeline.empty()) {
            const ScalarField src = timeline.at(time);
            d.q += src;
        }
        return d;
    };
    const auto add = [](const WavePair& base, double a, const WavePair& d) {
        WavePair out = base;
        for (std::size_t m = 0; m < out.p.size(); ++m) {
            out.p[m] += a * d.p[m];
            out.q[m] += a * d.q[m];
        }
        return out;
    };

    WavePair state{p0, p0_rate};
    state.q *= 1.0 / (c * c);

    WaveSolution sol;
    std::size_t next_sample = 0;
    const auto record_if_due = [&](double t) {
        while (next_sample < sample_times.size() &&
               std::abs(sample_times[next_sample] - t) <= ttol) {
            sol.times.push_back(sample_times[next_sample]);
            sol.p.push_back(state.p);
            ++next_sample;
        }
    };

    double t = 0.0;
    record_if_due(t);
    while (t < T - ttol) {
        double target = std::min(T, t + dt);
        if (next_sample < sample_times.size())
            target = std::min(target, std::max(sample_times[next_sample], t + ttol));
        const double h = target - t;

        const double vmax =
            convect ? std::max({bf.max_speed_at(t), bf.max_speed_at(t + 0.5 * h),
                                bf.max_speed_at(t + h)})
                    : 0.0;
        const double cfl = h * (vmax + c) / g.min_spacing();
        if (cfl > 0.3 * (1.0 + 1e-12)) {
            char buf[160];
            std::snprintf(buf, sizeof buf,
                          "time step too large: dt (max|ubar|+c)/h = %.6g exceeds the limit 0.3",
                          cfl);
            throw ContractViolation(buf);
        }

        const WavePair k1 = rhs(state, t);
        const WavePair k2 = rhs(add(state, 0.5 * h, k1), t + 0.5 * h);
        const WavePair k3 = rhs(add(state, 0.5 * h, k2), t + 0.5 * h);
        const WavePair k4 = rhs(add(state, h, k3), t + h);
        for (std::size_t m = 0; m < state.p.size(); ++m) {
            state.p[m] += h / 6.0 * (k1.p[m] + 2.0 * k2.p[m] + 2.0 * k3.p[m] + k4.p[m]);
            state.q[m] += h / 6.0 * (k1.q[m] + 2.0 * k2.q[m] + 2.0 * k3.q[m] + k4.q[m]);
        }
        t = target;
        state.p.require_finite("wave pressure");
        record_if_due(t);
    }
    return sol;
}

SourceComparison compare_sources(const FlowProvider& scenario, const BaseFlow& bf, double T,
                                 double dt, const std::vector<double>& sample_times) {
    const Grid& g = bf.grid();
    if (!(scenario.grid() == g))
        throw DimensionMismatch("scenario and base flow live on different grids");
    if (!(dt > 0.0) || !(T > 0.0)) throw ContractViolation("time step and span must be positive");
    const double rho = bf.rho_bar();
    const double c = bf.sound_speed();

    // One shared fluctuation source series sampled at the marching times.
    std::vector<SourceField> sources;
    {
        double t = 0.0;
        for (;;) {
            const FlowSnapshot snap = sample_flow(scenario, g, t);
            VectorField u_prime = snap.u;
            u_prime -= bf.velocity_at(t);
            sources.push_back(true_source(u_prime, rho, t));
            if (t >= T) break;
            t = std::min(T, t + dt);
        }
    }

    // Initial data shared by both wave runs.
    const FlowSnapshot snap0 = sample_flow(scenario, g, 0.0);
    ScalarField p0 = snap0.p;
    for (std::size_t m = 0; m < p0.size(); ++m) p0[m] -= bf.p_bar();
    VectorField u0_prime = snap0.u;
    u0_prime -= bf.velocity_at(0.0);
    const SplitVelocity split0 = helmholtz_split(u0_prime);
    ScalarField p0_rate = divergence(split0.acoustic, DiffMethod::spectral);
    p0_rate *= -rho * c * c;

    const WaveSolution conv =
        solve_convective_wave(p0, p0_rate, bf, sources, T, dt, sample_times,
                              Propagation::convective);
    const WaveSolution still =
        solve_convective_wave(p0, p0_rate, bf, sources, T, dt, sample_times,
                              Propagation::stationary);

    // Reference: the full linearized evolution, sampled at the same times.
    std::vector<ScalarField> ref;
    {
        PerturbationState state = make_initial_state(snap0, bf);
        const double ttol = 1e-9 * std::max(1.0, T);
        std::size_t next = 0;
        double t = 0.0;
        const auto record = [&] {
            while (next < sample_times.size() && std::abs(sample_times[next] - t) <= ttol) {
                ref.push_back(state.p_prime());
                ++next;
            }
        };
        record();
        while (t < T - ttol) {
            double target = std::min(T, t + dt);
            if (next < sample_times.size())
                target = std::min(target, std::max(sample_times[next], t + ttol));
            state = step(state, bf, t, target - t, FluxMode::central);
            t = target;
            record();
        }
    }

    if (conv.times.size() != sample_times.size() || still.times.size() != sample_times.size() ||
        ref.size() != sample_times.size())
        throw ContractViolation("sampling mismatch between the three evolutions");

    SourceComparison cmp;
    cmp.times = sample_times;
    for (std::size_t i = 0; i < sample_times.size(); ++i) {
        cmp.true_vs_reference.push_back(l2_diff(conv.p[i], ref[i]));
        cmp.lighthill_vs_reference.push_back(l2_diff(still.p[i], ref[i]));
        cmp.true_vs_lighthill.push_back(l2_diff(conv.p[i], still.p[i]));
    }
    return cmp;
}

} // namespace pathwave
