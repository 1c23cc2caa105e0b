// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion is a self-contained numerical experiment against
// an analytic oracle or a structural invariant, run at desk scale.
#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "pathwave/acoustics.hpp"
#include "pathwave/baseflow.hpp"
#include "pathwave/diagnostics.hpp"
#include "pathwave/perturbation.hpp"
#include "pathwave/random.hpp"
#include "pathwave/spectral.hpp"
#include "pathwave/splitting.hpp"

using namespace pathwave;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Check {
    std::string label;
    double measured = 0.0;
    double limit = 0.0;
    bool ok() const { return measured < limit; }
};

class Reporter {
public:
    void criterion(const std::string& name, const std::vector<Check>& checks) {
        bool pass = true;
        const Check* worst = nullptr;
        double worst_ratio = -1.0;
        for (const Check& c : checks) {
            pass = pass && c.ok();
            const double ratio = c.measured / c.limit;
            if (ratio > worst_ratio) {
                worst_ratio = ratio;
                worst = &c;
            }
        }
        if (checks.empty()) pass = false;
        std::printf("[%s] %s", pass ? "PASS" : "FAIL", name.c_str());
        if (worst)
            std::printf("  (%s: measured=%.3g, limit=%.3g)", worst->label.c_str(),
                        worst->measured, worst->limit);
        std::printf("\n");
        std::fflush(stdout);
        failures_ += pass ? 0 : 1;
    }

    void error(const std::string& name, const std::string& what) {
        std::printf("[FAIL] %s  (exception: %s)\n", name.c_str(), what.c_str());
        std::fflush(stdout);
        ++failures_;
    }

    int failures() const { return failures_; }

private:
    int failures_ = 0;
};

Grid square(int n) { return Grid::make2d(n, n, 2 * kPi, 2 * kPi); }

PerturbationState plane_wave_state(const Grid& g, double P, int k, double rho, double c,
                                   double phase) {
    const ScalarField p = ScalarField::sample(g, [&](const std::array<double, kMaxDim>& x) {
        return P * std::sin(k * x[0] + phase);
    });
    VectorField u(g);
    u.comp(0) = p;
    u.comp(0) *= 1.0 / (rho * c);
    return PerturbationState::from_fluctuations(p, u, rho, c);
}

ScalarField translate_x(const ScalarField& f, double shift) {
    SpectralField ph = forward_transform(f);
    const Grid& g = f.grid();
    for (int i = 0; i < g.n(0); ++i)
        for (int j = 0; j < g.n(1); ++j) {
            const std::size_t m = g.flat(i, j);
            const double arg = -ph.wavenumber(0, i) * shift;
            ph[m] *= std::complex<double>(std::cos(arg), std::sin(arg));
        }
    return inverse_transform(ph);
}

// --- 1: splitting certificates on random band-limited fields ---------------
std::vector<Check> splitting_certificates() {
    const Grid g = square(128);
    double rel_curl = 0.0, rel_div = 0.0, recomb = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const VectorField u =
            random_band_limited_vector(g, 1000 + static_cast<std::uint64_t>(trial), 40);
        const SplitVelocity split = helmholtz_split(u);
        const SplitCertificates certs = split_certificates(u, split);
        const double curl_in = curl_inf_norm(u, DiffMethod::spectral);
        const double div_in = divergence(u, DiffMethod::spectral).max_abs();
        rel_curl = std::max(rel_curl, certs.curl_acoustic / curl_in);
        rel_div = std::max(rel_div, certs.div_vortical / div_in);
        recomb = std::max(recomb, certs.recombination);
    }
    return {{"relative curl of curl-free part", rel_curl, 1e-10},
            {"relative divergence of solenoidal part", rel_div, 1e-10},
            {"recombination", recomb, 1e-12}};
}

// --- 2: pressure ignores the solenoidal part of the initial data -----------
std::vector<Check> acoustic_independence() {
    const Grid g = square(64);
    const std::array<double, kMaxDim> ub{0.3, 0.1, 0.0};
    const BaseFlow bf = BaseFlow::uniform(g, ub, 1.0, 1.0, 10.0);

    const ScalarField p0 = random_band_limited_scalar(g, 21, 5);
    const VectorField u0 = random_band_limited_vector(g, 22, 5);
    const SplitVelocity split = helmholtz_split(u0);

    PerturbationState full = PerturbationState::from_fluctuations(p0, u0, 1.0, 1.0);
    PerturbationState compact = PerturbationState::from_fluctuations(p0, split.acoustic, 1.0, 1.0);

    const double speed = std::sqrt(ub[0] * ub[0] + ub[1] * ub[1]) + 1.0;
    const double dt = 0.3 * g.min_spacing() / speed;
    for (int m = 0; m < 200; ++m) {
        full = step(full, bf, m * dt, dt, FluxMode::central);
        compact = step(compact, bf, m * dt, dt, FluxMode::central);
    }
    return {{"pressure trajectory gap after 200 steps",
             l2_diff(full.p_prime(), compact.p_prime()), 1e-10}};
}

// --- 3: directional eigenstructure over random backgrounds -----------------
std::vector<Check> eigenstructure() {
    CounterRng rng(33);
    double worst_lambda = 0.0, worst_recon = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int dim = 2 + (trial & 1);
        std::array<double, kMaxDim> u{}, nu{};
        for (int i = 0; i < dim; ++i) u[i] = rng.next_range(-0.5, 0.5);
        double norm = 0.0;
        while (norm < 0.2) {
            norm = 0.0;
            for (int i = 0; i < dim; ++i) {
                nu[i] = rng.next_range(-1.0, 1.0);
                norm += nu[i] * nu[i];
            }
            norm = std::sqrt(norm);
        }
        for (int i = 0; i < dim; ++i) nu[i] /= norm;
        const double rho = rng.next_range(0.5, 2.0);
        const double c = rng.next_range(0.5, 2.0);

        const EigenSystem es = eigendecompose(u, rho, c, nu, dim);
        double un = 0.0;
        for (int i = 0; i < dim; ++i) un += u[i] * nu[i];
        std::vector<double> expected{un - c};
        for (int i = 0; i < dim - 1; ++i) expected.push_back(un);
        expected.push_back(un + c);
        for (int i = 0; i <= dim; ++i)
            worst_lambda = std::max(
                worst_lambda, std::abs(es.lambda[static_cast<std::size_t>(i)] -
                                       expected[static_cast<std::size_t>(i)]));

        SmallMat L(dim + 1);
        for (int i = 0; i <= dim; ++i) L(i, i) = es.lambda[static_cast<std::size_t>(i)];
        const SmallMat recon = es.R * L * es.R_inv;
        worst_recon = std::max(
            worst_recon, max_abs_diff(recon, coefficient_matrix(u, rho, c, nu, dim)));
    }
    return {{"eigenvalue multiset", worst_lambda, 1e-12},
            {"matrix reconstruction", worst_recon, 1e-12}};
}

// --- 4: total energy under the two flux modes -------------------------------
std::vector<Check> energy_conservation() {
    const Grid g = square(64);
    const BaseFlow bf = BaseFlow::uniform(g, {0.3, 0.0, 0.0}, 1.0, 1.0, 10.0);
    const double dt = 0.3 * g.min_spacing() / 1.3;

    PerturbationState s = plane_wave_state(g, 1e-3, 1, 1.0, 1.0, 0.0);
    std::vector<double> times{0.0};
    std::vector<PerturbationState> traj{s};
    for (int m = 0; m < 100; ++m) {
        s = step(s, bf, m * dt, dt, FluxMode::central);
        times.push_back((m + 1) * dt);
        traj.push_back(s);
    }
    const EnergyReport rep = conservation_drift(times, traj);
    double drift = 0.0;
    for (double d : rep.drift) drift = std::max(drift, std::abs(d));

    PerturbationState w = plane_wave_state(g, 1e-3, 1, 1.0, 1.0, 0.0);
    std::vector<PerturbationState> wtraj{w};
    for (int m = 0; m < 100; ++m) {
        w = step(w, bf, m * dt, dt, FluxMode::upwind);
        wtraj.push_back(w);
    }
    const EnergyReport wrep = conservation_drift(times, wtraj);
    double growth = 0.0; // largest relative per-step increase; must stay ~0
    for (std::size_t i = 1; i < wrep.total_eta.size(); ++i)
        growth = std::max(growth, (wrep.total_eta[i] - wrep.total_eta[i - 1]) /
                                      wrep.total_eta.front());
    return {{"relative drift, energy-conserving flux", drift, 1e-8},
            {"energy created by the dissipative flux", growth, 1e-13}};
}

// --- 5: total energy equals acoustic plus vortical energy -------------------
std::vector<Check> energy_split_identity() {
    const Grid g = square(64);
    const BaseFlow bf = BaseFlow::uniform(g, {0.3, 0.0, 0.0}, 1.0, 1.0, 10.0);

    PerturbationState s = plane_wave_state(g, 1e-3, 1, 1.0, 1.0, 0.3);
    {
        // stir in a solenoidal vortex pattern so both parts carry energy
        VectorField u = s.u_prime();
        const ScalarField p = s.p_prime();
        u.comp(0) += ScalarField::sample(g, [](const std::array<double, kMaxDim>& x) {
            return 2e-3 * std::sin(x[0]) * std::cos(x[1]);
        });
        u.comp(1) += ScalarField::sample(g, [](const std::array<double, kMaxDim>& x) {
            return -2e-3 * std::cos(x[0]) * std::sin(x[1]);
        });
        s = PerturbationState::from_fluctuations(p, u, 1.0, 1.0);
    }

    const double dt = 0.3 * g.min_spacing() / 1.3;
    std::vector<double> times{0.0};
    std::vector<PerturbationState> traj{s};
    for (int m = 0; m < 50; ++m) {
        s = step(s, bf, m * dt, dt, FluxMode::central);
        times.push_back((m + 1) * dt);
        traj.push_back(s);
    }
    const EnergyReport rep = conservation_drift(times, traj);
    double worst = 0.0;
    for (std::size_t i = 0; i < rep.times.size(); ++i)
        worst = std::max(worst, std::abs(rep.total_eta[i] - (rep.total_acoustic[i] +
                                                             rep.total_vortical[i])) /
                                    rep.total_eta[i]);
    return {{"relative gap in the energy split", worst, 1e-8}};
}

// --- 6: pathline-averaged background oracles --------------------------------
std::vector<Check> base_flow_averaging() {
    std::vector<Check> checks;

    { // uniform flow averages to itself
        const Grid g = square(32);
        const UniformPlaneWaveProvider uniform(g, {0.3, -0.2, 0.0}, 1.0, 1.0, 1.0, 0.0,
                                               {1, 0, 0}, 0.0, 0.1, 1e4);
        const BaseFlow bf = compute_base_flow(uniform, g, 1.0, 0.05, {0.0});
        VectorField err = bf.velocity_at(0.0);
        err.comp(0) += ScalarField(g, -0.3);
        err.comp(1) += ScalarField(g, 0.2);
        checks.push_back({"uniform flow", err.max_norm(), 1e-13});
    }

    { // oscillating uniform flow averages to its mean over one period
        const Grid g = square(32);
        const OscillatingUniformProvider osc(g, {0.3, 0.1, 0.0}, 0.2, 1, 1.0, 1.0, 1.0,
                                             1.0, 0.1, 1e4);
        const BaseFlow bf = compute_base_flow(osc, g, 1.0, 1.0 / 128, {0.0});
        VectorField err = bf.velocity_at(0.0);
        err.comp(0) += ScalarField(g, -0.3);
        err.comp(1) += ScalarField(g, -0.1);
        checks.push_back({"oscillating flow vs its mean", err.max_norm(), 1e-8});
    }

    { // rigid rotation: interior average cancels over one revolution,
      // first-order decay under refinement, blend zone matches the
      // closed-form orbit average
        const double omega = 2 * kPi, tau = 1.0;
        auto interior_err = [&](int n) {
            const Grid g = square(n);
            const SolidRotationProvider rot(g, omega, 1.0, 1.0, 1.0, 0.1, 1e4);
            const BaseFlow bf = compute_base_flow(rot, g, tau, 1.0 / n, {0.0});
            const VectorField ub = bf.velocity_at(0.0);
            const double r_keep = 0.5 * rot.inner_radius();
            double worst = 0.0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    const double dx = g.coord(0, i) - kPi, dy = g.coord(1, j) - kPi;
                    if (dx * dx + dy * dy > r_keep * r_keep) continue;
                    const std::size_t m = g.flat(i, j);
                    worst = std::max(worst, std::hypot(ub.comp(0)[m], ub.comp(1)[m]));
                }
            return std::pair<double, BaseFlow>(worst, bf);
        };

        const auto [coarse, bf64] = interior_err(64);
        const auto [fine, bf128] = interior_err(128);
        checks.push_back({"rotating core interior average", fine, 5e-3});
        checks.push_back({"refinement ratio shortfall (want >= 1.8x)",
                          1.8 * fine / std::max(coarse, 1e-300), 1.0});

        // blend-zone cross-check: orbits are circles at constant angular
        // rate, so the window average has a closed form reachable from one
        // provider sample at the node itself.  The averaged field swings
        // through a full revolution of direction across the rim, so the
        // error there is the hardest in the whole field; assert it both
        // converges under refinement and lands within a measured bound.
        auto blend_err = [&](const BaseFlow& bf, int n) {
            const Grid g = square(n);
            const SolidRotationProvider rot(g, omega, 1.0, 1.0, 1.0, 0.1, 1e4);
            const FlowSnapshot snap = sample_flow(rot, g, 0.0);
            const int ic = n / 2;
            const int ib = ic + 21 * n / 64; // radius (21/32)*pi, mid-rim
            const std::size_t m = g.flat(ib, ic);
            const double dx = g.coord(0, ib) - kPi;
            const double w = snap.u.comp(1)[m] / dx; // local angular rate
            const double ox = dx / tau * (std::cos(w * tau) - 1.0);
            const double oy = dx / tau * std::sin(w * tau);
            const VectorField ub = bf.velocity_at(0.0);
            return std::hypot(ub.comp(0)[m] - ox, ub.comp(1)[m] - oy) /
                   std::hypot(ox, oy);
        };
        const Grid g256 = square(256);
        const SolidRotationProvider rot256(g256, omega, 1.0, 1.0, 1.0, 0.1, 1e4);
        const BaseFlow bf256 = compute_base_flow(rot256, g256, tau, 1.0 / 256, {0.0});
        const double eb128 = blend_err(bf128, 128);
        const double eb256 = blend_err(bf256, 256);
        checks.push_back({"blend-zone orbit-average oracle, relative, n=256", eb256, 5e-2});
        checks.push_back({"blend-zone refinement shortfall (want >= 2x)",
                          2.0 * eb256 / std::max(eb128, 1e-300), 1.0});
    }
    return checks;
}

// --- 7: convective wave operator: frame change and dispersion ----------------
std::vector<Check> convective_wave_transport() {
    std::vector<Check> checks;

    { // drifting solution == translated rest solution, one period, n = 128
        const Grid g = square(128);
        const double u0 = 0.3, T = 2 * kPi;
        const BaseFlow rest = BaseFlow::uniform(g, {0.0, 0.0, 0.0}, 1.0, 1.0, 10.0);
        const BaseFlow moving = BaseFlow::uniform(g, {u0, 0.0, 0.0}, 1.0, 1.0, 10.0);
        const ScalarField p0 = random_band_limited_scalar(g, 71, 2);
        const ScalarField rate0 = random_band_limited_scalar(g, 72, 2);
        const double dt = 0.3 * g.min_spacing() / (u0 + 1.0);
        const WaveSolution a = solve_convective_wave(p0, rate0, rest, {}, T, dt, {T});
        const WaveSolution b = solve_convective_wave(p0, rate0, moving, {}, T, dt, {T});
        checks.push_back(
            {"frame-change gap", l2_diff(b.p[0], translate_x(a.p[0], u0 * T)), 1e-5});
    }

    { // phase speed of the k = 1 mode on a drifting background
        const Grid g = square(64);
        const double u0 = 0.3, c = 1.0, T = 1.0;
        const BaseFlow bf = BaseFlow::uniform(g, {u0, 0.0, 0.0}, 1.0, c, 10.0);
        const ScalarField p0 = ScalarField::sample(
            g, [](const std::array<double, kMaxDim>& x) { return std::sin(x[0]); });
        const ScalarField rate0 = ScalarField::sample(
            g, [&](const std::array<double, kMaxDim>& x) { return -c * std::cos(x[0]); });
        const WaveSolution sol = solve_convective_wave(p0, rate0, bf, {}, T, 0.01, {T});
        const std::size_t m = g.flat(1, 0);
        const std::complex<double> before = forward_transform(p0)[m];
        const std::complex<double> after = forward_transform(sol.p[0])[m];
        const double speed = -std::arg(after / before) / T;
        checks.push_back({"phase speed error", std::abs(speed - (u0 + c)), 5e-3});
    }
    return checks;
}

// --- 8: quadratic sources: oracle, closed-loop agreement, operator gap ------
std::vector<Check> source_identities() {
    std::vector<Check> checks;

    { // analytic single-mode oracle
        const Grid g = square(64);
        VectorField u(g);
        u.comp(0) = ScalarField::sample(
            g, [](const std::array<double, kMaxDim>& x) { return std::sin(x[0]); });
        const SourceField s = true_source(u, 1.0);
        const ScalarField expected = ScalarField::sample(
            g, [](const std::array<double, kMaxDim>& x) { return 2.0 * std::cos(2.0 * x[0]); });
        checks.push_back({"shear-wave source oracle", max_abs_diff(s.s, expected), 1e-10});
    }

    { // wave runs driven by the fluctuation source track the full evolution,
      // and the stationary operator drifts away monotonically with |ubar| T
        const Grid g = square(64);
        const double u0 = 0.3, T = 2 * kPi;
        const UniformPlaneWaveProvider wave(g, {u0, 0.0, 0.0}, 1.0, 1.0, 1.0, 1e-3,
                                            {1, 0, 0}, 0.0, 0.1, 1e4);
        const BaseFlow bf = BaseFlow::uniform(g, {u0, 0.0, 0.0}, 1.0, 1.0, 10.0);
        std::vector<double> samples;
        for (int i = 0; i <= 4; ++i) samples.push_back(T * i / 4);
        const SourceComparison cmp = compare_sources(wave, bf, T, 0.02, samples);

        double track = 0.0;
        for (double d : cmp.true_vs_reference) track = std::max(track, d);
        checks.push_back({"fluctuation-source wave vs full evolution", track, 1e-4});

        double slip = 0.0; // largest drop between consecutive operator gaps
        for (std::size_t i = 1; i < cmp.true_vs_lighthill.size(); ++i)
            slip = std::max(slip, cmp.true_vs_lighthill[i - 1] - cmp.true_vs_lighthill[i]);
        checks.push_back({"operator gap monotonicity slip", slip, 1e-14});
        checks.push_back({"operator gap growth shortfall",
                          1e-9 / std::max(cmp.true_vs_lighthill.back(), 1e-300), 1.0});
    }
    return checks;
}

// --- 9: plane-wave impedance -------------------------------------------------
std::vector<Check> impedance_relation() {
    const Grid g = square(64);
    const double rho0 = 1.2, c = 1.5, P = 0.01;
    const UniformPlaneWaveProvider wave(g, {0.25, -0.1, 0.0}, rho0, rho0 * c * c, c, P,
                                        {2, 1, 0}, 0.0, 0.1, 1e4);
    const FlowSnapshot snap = sample_flow(wave, g, 0.37);
    const std::array<double, kMaxDim> n = wave.wave_normal();

    ScalarField un(g);
    for (std::size_t m = 0; m < un.size(); ++m)
        un[m] = (snap.u.comp(0)[m] - 0.25) * n[0] + (snap.u.comp(1)[m] + 0.1) * n[1];
    const double un_max = un.max_abs();

    double worst = 0.0;
    for (std::size_t m = 0; m < un.size(); ++m) {
        if (std::abs(un[m]) < 1e-3 * un_max) continue;
        const double p_prime = snap.p[m] - rho0 * c * c;
        worst = std::max(worst, std::abs(p_prime / un[m] - rho0 * c) / (rho0 * c));
    }
    return {{"pointwise impedance residual", worst, 1e-10}};
}

// --- 10: one-period intensity of a resting plane wave ------------------------
std::vector<Check> intensity_window() {
    const Grid g = square(64);
    const double P = 0.1, rho = 1.0, c = 1.0;
    const BaseFlow bf = BaseFlow::uniform(g, {0.0, 0.0, 0.0}, rho * c * c, c, 10.0);

    const int n_samp = 216;
    const double period = 2 * kPi / c;
    const double dt = period / n_samp;
    PerturbationState s = plane_wave_state(g, P, 1, rho, c, 0.0);
    std::vector<double> times{0.0};
    std::vector<PerturbationState> traj{s};
    for (int m = 0; m + 1 < n_samp; ++m) {
        s = step(s, bf, m * dt, dt, FluxMode::central);
        times.push_back((m + 1) * dt);
        traj.push_back(s);
    }
    const IntensityField result = intensity(times, traj, bf, n_samp);

    const double expect = P * P / (2.0 * rho * c);
    double mag_err = 0.0;
    for (std::size_t m = 0; m < result.I.comp(0).size(); ++m)
        mag_err = std::max(
            mag_err,
            std::abs(std::hypot(result.I.comp(0)[m], result.I.comp(1)[m]) - expect));
    return {{"intensity magnitude error", mag_err, 1e-8},
            {"intensity divergence", result.div_norm, 1e-8}};
}

} // namespace

int main() {
    Reporter rep;
    const struct {
        const char* name;
        std::vector<Check> (*fn)();
    } criteria[] = {
        {"01 splitting-certificates", splitting_certificates},
        {"02 acoustic-independence", acoustic_independence},
        {"03 eigenstructure", eigenstructure},
        {"04 energy-conservation", energy_conservation},
        {"05 energy-split-identity", energy_split_identity},
        {"06 base-flow-averaging", base_flow_averaging},
        {"07 convective-wave-transport", convective_wave_transport},
        {"08 source-identities", source_identities},
        {"09 impedance-relation", impedance_relation},
        {"10 intensity-window", intensity_window},
    };
    for (const auto& c : criteria) {
        try {
            rep.criterion(c.name, c.fn());
        } catch (const std::exception& e) {
            rep.error(c.name, e.what());
        }
    }
    if (rep.failures() > 0) {
        std::printf("%d criterion(s) failed\n", rep.failures());
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
