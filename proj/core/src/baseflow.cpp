#include "pathwave/baseflow.hpp"

#include <algorithm>
#include <cmath>

#include "pathwave/errors.hpp"
#include "pathwave/interp.hpp"
#include "pathwave/spectral.hpp"

namespace pathwave {

namespace {

// One 4-stage step of dx/dt = u from (t, x) to t + h (h may be negative).
std::array<double, kMaxDim> rk4_step(const FlowProvider& provider, double t,
                                     const std::array<double, kMaxDim>& x, double h) {
    const auto k1 = provider.velocity(t, x);
    std::array<double, kMaxDim> x2{}, x3{}, x4{}, out{};
    for (int a = 0; a < kMaxDim; ++a) x2[a] = x[a] + 0.5 * h * k1[a];
    const auto k2 = provider.velocity(t + 0.5 * h, x2);
    for (int a = 0; a < kMaxDim; ++a) x3[a] = x[a] + 0.5 * h * k2[a];
    const auto k3 = provider.velocity(t + 0.5 * h, x3);
    for (int a = 0; a < kMaxDim; ++a) x4[a] = x[a] + h * k3[a];
    const auto k4 = provider.velocity(t + h, x4);
    for (int a = 0; a < kMaxDim; ++a)
        out[a] = x[a] + h / 6.0 * (k1[a] + 2.0 * k2[a] + 2.0 * k3[a] + k4[a]);
    return out;
}

double eval_selected(const FlowProvider& provider, FieldSelector f, double t,
                     const std::array<double, kMaxDim>& x) {
    if (f.kind == FieldSelector::pressure) return provider.pressure(t, x);
    return provider.velocity(t, x)[f.component];
}

void check_transport_step(const FlowProvider& provider, const Grid& grid, double dt) {
    if (!(dt > 0.0)) throw ContractViolation("transport step dt must be positive");
    const double cfl = dt * provider.max_speed() / grid.min_spacing();
    if (cfl > 4.0)
        throw ContractViolation("transport step too large: dt*max|u|/h = " +
                                std::to_string(cfl) + " exceeds 4");
}

// Cell centers in physical coordinates, precomputed once per sweep.
std::vector<std::array<double, kMaxDim>> cell_centers(const Grid& g) {
    std::vector<std::array<double, kMaxDim>> xs(g.size());
    const int nz = g.dim() == 3 ? g.n(2) : 1;
    std::size_t idx = 0;
    for (int i = 0; i < g.n(0); ++i)
        for (int j = 0; j < g.n(1); ++j)
            for (int k = 0; k < nz; ++k) {
                xs[idx][0] = g.coord(0, i);
                xs[idx][1] = g.coord(1, j);
                if (g.dim() == 3) xs[idx][2] = g.coord(2, k);
                ++idx;
            }
    return xs;
}

std::array<double, kMaxDim> to_index_units(const Grid& g,
                                           const std::array<double, kMaxDim>& x) {
    std::array<double, kMaxDim> pos{};
    for (int a = 0; a < g.dim(); ++a) pos[a] = x[a] / g.spacing(a);
    return pos;
}

} // namespace

std::vector<Pathline> integrate_pathlines(const FlowProvider& provider,
                                          const std::vector<std::array<double, kMaxDim>>& seeds,
                                          double t0, double t1, double dt) {
    if (!(dt > 0.0)) throw ContractViolation("pathline dt must be positive");
    if (t1 < t0) throw ContractViolation("pathline window must satisfy t1 >= t0");
    provider.require_time(t0);
    provider.require_time(t1);

    const Grid& g = provider.grid();
    std::vector<Pathline> out;
    out.reserve(seeds.size());
    for (const auto& seed : seeds) {
        Pathline pl;
        pl.seed = seed;
        std::array<double, kMaxDim> x = seed;
        double t = t0;
        pl.times.push_back(t);
        pl.positions.push_back(x);
        while (t < t1) {
            const double h = std::min(dt, t1 - t);
            x = rk4_step(provider, t, x, h);
            for (int a = 0; a < g.dim(); ++a) x[a] = g.wrap_coord(a, x[a]);
            t = (t1 - t <= dt) ? t1 : t + dt;
            pl.times.push_back(t);
            pl.positions.push_back(x);
        }
        out.push_back(std::move(pl));
    }
    return out;
}

ScalarField accumulate_forward(const FlowProvider& provider, const Grid& grid, FieldSelector f,
                               double tau, double dt) {
    if (!(tau > 0.0)) throw ContractViolation("averaging horizon tau must be positive");
    provider.require_time(0.0);
    provider.require_time(tau);
    check_transport_step(provider, grid, dt);

    const auto centers = cell_centers(grid);
    ScalarField g(grid, 0.0);
    ScalarField next(grid, 0.0);

    double t = 0.0;
    while (t < tau) {
        const double h = std::min(dt, tau - t);
        const double t1 = (tau - t <= dt) ? tau : t + dt;
        for (std::size_t idx = 0; idx < grid.size(); ++idx) {
            // Departure point of the characteristic arriving at this cell.
            const auto dep = rk4_step(provider, t1, centers[idx], -h);
            const double carried = interp_field(g, to_index_units(grid, dep));
            const double src =
                0.5 * h *
                (eval_selected(provider, f, t, dep) + eval_selected(provider, f, t1, centers[idx])) /
                tau;
            next[idx] = carried + src;
        }
        std::swap(g, next);
        t = t1;
    }
    return g;
}

std::vector<ScalarField> transport_backward(const FlowProvider& provider,
                                            const ScalarField& end_values, double tau, double dt,
                                            const std::vector<double>& sample_times) {
    if (!(tau > 0.0)) throw ContractViolation("transport horizon tau must be positive");
    end_values.require_finite("transport end values");
    const Grid& grid = end_values.grid();
    check_transport_step(provider, grid, dt);
    provider.require_time(0.0);
    provider.require_time(tau);
    for (std::size_t i = 0; i < sample_times.size(); ++i) {
        if (sample_times[i] < 0.0 || sample_times[i] > tau)
            throw ContractViolation("sample time outside [0, tau]");
        if (i > 0 && !(sample_times[i] > sample_times[i - 1]))
            throw ContractViolation("sample times must be strictly increasing");
    }

    const auto centers = cell_centers(grid);
    std::vector<ScalarField> results(sample_times.size());

    ScalarField f = end_values;
    ScalarField next(grid, 0.0);
    double t = tau;
    // Walk the sample times from the latest down, marching in dt-sized
    // pieces that land exactly on each requested time.
    std::size_t pending = sample_times.size();
    while (pending > 0 && sample_times[pending - 1] == tau) {
        results[--pending] = f;
    }
    while (pending > 0) {
        const double target = sample_times[pending - 1];
        double t_next = t - dt;
        if (t_next < target) t_next = target;
        const double h = t - t_next;
        for (std::size_t idx = 0; idx < grid.size(); ++idx) {
            // Value is carried from the later time: trace the
            // characteristic forward from (t_next, x) to t.
            const auto arrival = rk4_step(provider, t_next, centers[idx], h);
            next[idx] = interp_field(f, to_index_units(grid, arrival));
        }
        std::swap(f, next);
        t = t_next;
        while (pending > 0 && sample_times[pending - 1] == t) results[--pending] = f;
    }
    return results;
}

BaseFlow::BaseFlow(Grid grid, double tau, std::vector<double> sample_times,
                   std::vector<VectorField> u_samples, double p_bar, double c)
    : grid_(grid), tau_(tau), times_(std::move(sample_times)), samples_(std::move(u_samples)),
      p_bar_(p_bar), c_(c) {
    if (times_.empty() || times_.size() != samples_.size())
        throw ContractViolation("base flow needs matching sample times and fields");
    if (!(c > 0.0)) throw ContractViolation("base flow needs a positive speed of sound");
    rho_bar_ = p_bar_ / (c_ * c_);
    if (!(rho_bar_ > 0.0))
        throw ContractViolation("averaged pressure implies a non-positive density");
}

VectorField BaseFlow::velocity_at(double t) const {
    if (samples_.size() == 1 || t <= times_.front()) return samples_.front();
    if (t >= times_.back()) return samples_.back();
    std::size_t hi = 1;
    while (hi + 1 < times_.size() && times_[hi] < t) ++hi;
    const double w = (t - times_[hi - 1]) / (times_[hi] - times_[hi - 1]);
    VectorField out = samples_[hi - 1];
    out *= (1.0 - w);
    VectorField other = samples_[hi];
    other *= w;
    out += other;
    return out;
}

double BaseFlow::max_speed_at(double t) const {
    return velocity_at(t).max_norm();
}

BaseFlow BaseFlow::uniform(const Grid& grid, std::array<double, kMaxDim> u0, double p_bar,
                           double c, double tau) {
    VectorField u(grid);
    for (int a = 0; a < grid.dim(); ++a)
        for (std::size_t i = 0; i < grid.size(); ++i) u.comp(a)[i] = u0[a];
    return BaseFlow(grid, tau, {0.0}, {std::move(u)}, p_bar, c);
}

BaseFlow compute_base_flow(const FlowProvider& provider, const Grid& grid, double tau, double dt,
                           const std::vector<double>& sample_times) {
    if (sample_times.empty()) throw ContractViolation("need at least one sample time");

    const ScalarField g_p = accumulate_forward(provider, grid, FieldSelector::p(), tau, dt);
    const double p_bar = g_p.mean();

    std::vector<VectorField> samples(sample_times.size(), VectorField(grid));
    for (int a = 0; a < grid.dim(); ++a) {
        const ScalarField g_u = accumulate_forward(provider, grid, FieldSelector::u(a), tau, dt);
        std::vector<ScalarField> back = transport_backward(provider, g_u, tau, dt, sample_times);
        for (std::size_t s = 0; s < back.size(); ++s) samples[s].comp(a) = std::move(back[s]);
    }
    return BaseFlow(grid, tau, sample_times, std::move(samples), p_bar, provider.sound_speed());
}

BaseFlowPropertyReport check_base_flow_properties(const BaseFlow& bf) {
    BaseFlowPropertyReport rep;
    rep.state_relation_residual =
        std::abs(bf.rho_bar() - bf.p_bar() / (bf.sound_speed() * bf.sound_speed()));

    const int d = bf.grid().dim();
    // Per-sample spectral residuals.
    std::vector<std::vector<VectorField>> grads(bf.sample_count());
    for (std::size_t s = 0; s < bf.sample_count(); ++s) {
        const VectorField& u = bf.sample_field(s);
        rep.max_divergence =
            std::max(rep.max_divergence, divergence(u, DiffMethod::spectral).max_abs());

        grads[s].reserve(d);
        for (int j = 0; j < d; ++j)
            grads[s].push_back(gradient(u.comp(j), DiffMethod::spectral));

        ScalarField contraction(bf.grid(), 0.0);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                for (std::size_t m = 0; m < bf.grid().size(); ++m)
                    contraction[m] += grads[s][j].comp(i)[m] * grads[s][i].comp(j)[m];
        rep.max_gradient_contraction =
            std::max(rep.max_gradient_contraction, contraction.max_abs());
    }

    // Discrete material derivative between consecutive samples, advective
    // term evaluated on the midpoint field.
    for (std::size_t s = 0; s + 1 < bf.sample_count(); ++s) {
        const double dt = bf.sample_times()[s + 1] - bf.sample_times()[s];
        if (!(dt > 0.0)) continue;
        VectorField mid = bf.sample_field(s);
        mid += bf.sample_field(s + 1);
        mid *= 0.5;
        for (int j = 0; j < d; ++j) {
            const VectorField gj = gradient(mid.comp(j), DiffMethod::spectral);
            for (std::size_t m = 0; m < bf.grid().size(); ++m) {
                double adv = 0.0;
                for (int i = 0; i < d; ++i) adv += mid.comp(i)[m] * gj.comp(i)[m];
                const double ddt =
                    (bf.sample_field(s + 1).comp(j)[m] - bf.sample_field(s).comp(j)[m]) / dt;
                rep.max_material_derivative =
                    std::max(rep.max_material_derivative, std::abs(ddt + adv));
            }
        }
    }
    return rep;
}

} // namespace pathwave
