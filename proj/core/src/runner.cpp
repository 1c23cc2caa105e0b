#include "pathwave/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pathwave/errors.hpp"
#include "pathwave/field_io.hpp"
#include "pathwave/spectral.hpp"

namespace fs = std::filesystem;

namespace pathwave {

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fmt_short(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

template <class Fn> auto stage(const char* name, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const Error& e) {
        throw Error(std::string(name) + ": " + e.what());
    }
}

void write_text(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << content;
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

std::vector<double> linspace(double lo, double hi, int count) {
    std::vector<double> out;
    for (int i = 0; i < count; ++i)
        out.push_back(i + 1 == count ? hi : lo + (hi - lo) * i / (count - 1));
    return out;
}

bool uniformly_spaced(const std::vector<double>& t) {
    if (t.size() < 2) return false;
    const double dt = t[1] - t[0];
    if (!(dt > 0.0)) return false;
    for (std::size_t i = 1; i < t.size(); ++i)
        if (std::abs(t[i] - t[i - 1] - dt) > 1e-9 * std::max(1.0, std::abs(dt))) return false;
    return true;
}

} // namespace

Grid config_grid(const RunConfig& cfg) {
    if (cfg.dim == 2)
        return Grid::make2d(cfg.grid_n, cfg.grid_n, cfg.grid_length, cfg.grid_length);
    return Grid::make3d(cfg.grid_n, cfg.grid_n, cfg.grid_n, cfg.grid_length, cfg.grid_length,
                        cfg.grid_length);
}

namespace {

std::vector<SnapshotFiles> read_snapshot_manifest(const std::string& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) throw IoError("cannot read snapshot manifest '" + manifest_path + "'");
    const fs::path base = fs::path(manifest_path).parent_path();
    std::vector<SnapshotFiles> files;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        SnapshotFiles f;
        std::string rho, u, p;
        if (!(ss >> f.t)) continue; // blank line
        if (!(ss >> rho >> u >> p))
            throw IoError("snapshot manifest line " + std::to_string(lineno) +
                          ": expected 'time rho.afld u.afld p.afld'");
        f.rho_path = (base / rho).string();
        f.u_path = (base / u).string();
        f.p_path = (base / p).string();
        files.push_back(f);
    }
    return files;
}

} // namespace

std::unique_ptr<FlowProvider> make_provider(const RunConfig& cfg) {
    const Grid grid = config_grid(cfg);
    const double p0 = config_p0(cfg);
    std::array<double, kMaxDim> u0{cfg.u0[0], cfg.u0[1], cfg.u0[2]};
    std::array<int, kMaxDim> wk{cfg.wave_k[0], cfg.wave_k[1], cfg.wave_k[2]};
    switch (cfg.scenario) {
    case ScenarioKind::uniform:
        // A plane wave of amplitude zero is exactly the uniform background.
        return std::make_unique<UniformPlaneWaveProvider>(grid, u0, cfg.rho0, p0, cfg.c, 0.0, wk,
                                                          0.0, cfg.mach, cfg.reynolds);
    case ScenarioKind::plane_wave:
        return std::make_unique<UniformPlaneWaveProvider>(grid, u0, cfg.rho0, p0, cfg.c,
                                                          cfg.amplitude, wk, cfg.phase, cfg.mach,
                                                          cfg.reynolds);
    case ScenarioKind::taylor_green:
        return std::make_unique<TaylorGreenProvider>(grid, cfg.amplitude, cfg.rho0, p0, cfg.c,
                                                     cfg.mach, cfg.reynolds);
    case ScenarioKind::solid_rotation:
        return std::make_unique<SolidRotationProvider>(grid, cfg.omega, cfg.rho0, p0, cfg.c,
                                                       cfg.mach, cfg.reynolds);
    case ScenarioKind::oscillating:
        return std::make_unique<OscillatingUniformProvider>(grid, u0, cfg.amplitude,
                                                            cfg.oscillate_axis, cfg.period,
                                                            cfg.rho0, p0, cfg.c, cfg.mach,
                                                            cfg.reynolds);
    case ScenarioKind::snapshots:
        return ingest_snapshots(read_snapshot_manifest(cfg.snapshot_manifest), cfg.c, cfg.mach,
                                cfg.reynolds);
    }
    throw ConfigError("scenario", "scenario: unknown kind");
}

void write_base_flow(const BaseFlow& bf, const std::string& dir) {
    fs::create_directories(dir);
    std::string manifest;
    manifest += "tau = " + fmt(bf.tau()) + "\n";
    manifest += "p_bar = " + fmt(bf.p_bar()) + "\n";
    manifest += "c = " + fmt(bf.sound_speed()) + "\n";
    manifest += "samples = " + std::to_string(bf.sample_count()) + "\n";
    for (std::size_t i = 0; i < bf.sample_count(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "ubar_%03zu.afld", i);
        write_field((fs::path(dir) / name).string(), bf.sample_field(i));
        manifest += "sample_" + std::to_string(i) + " = " + fmt(bf.sample_times()[i]) + " " +
                    name + "\n";
    }
    write_text(fs::path(dir) / "baseflow.txt", manifest);
}

BaseFlow read_base_flow(const std::string& dir) {
    std::ifstream in(fs::path(dir) / "baseflow.txt");
    if (!in) throw IoError("cannot read base-flow manifest in '" + dir + "'");
    double tau = 0.0, p_bar = 0.0, c = 0.0;
    std::size_t count = 0;
    std::vector<double> times;
    std::vector<std::string> names;
    std::string line;
    while (std::getline(in, line)) {
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = line.substr(0, line.find(' '));
        std::istringstream value(line.substr(eq + 1));
        if (key == "tau") value >> tau;
        else if (key == "p_bar") value >> p_bar;
        else if (key == "c") value >> c;
        else if (key == "samples") value >> count;
        else if (key.rfind("sample_", 0) == 0) {
            double t;
            std::string name;
            if (!(value >> t >> name))
                throw IoError("malformed base-flow manifest line: '" + line + "'");
            times.push_back(t);
            names.push_back(name);
        }
    }
    if (times.size() != count || count == 0)
        throw IoError("base-flow manifest lists " + std::to_string(times.size()) +
                      " samples, declared " + std::to_string(count));
    std::vector<VectorField> samples;
    samples.reserve(names.size());
    for (const std::string& name : names)
        samples.push_back(read_vector_field((fs::path(dir) / name).string()));
    const Grid grid = samples.front().grid();
    return BaseFlow(grid, tau, std::move(times), std::move(samples), p_bar, c);
}

namespace {

std::string energy_csv(const EnergyReport& rep) {
    std::string out = "t,total_eta,total_acoustic,total_vortical,drift\n";
    for (std::size_t i = 0; i < rep.times.size(); ++i)
        out += fmt(rep.times[i]) + "," + fmt(rep.total_eta[i]) + "," +
               fmt(rep.total_acoustic[i]) + "," + fmt(rep.total_vortical[i]) + "," +
               fmt(rep.drift[i]) + "\n";
    return out;
}

std::string certificates_csv(const std::vector<double>& times,
                             const std::vector<SplitCertificates>& certs) {
    std::string out = "t,curl_acoustic,div_vortical,recombination,potential_residual\n";
    for (std::size_t i = 0; i < times.size(); ++i)
        out += fmt(times[i]) + "," + fmt(certs[i].curl_acoustic) + "," +
               fmt(certs[i].div_vortical) + "," + fmt(certs[i].recombination) + "," +
               fmt(certs[i].potential_residual) + "\n";
    return out;
}

std::string sources_csv(const SourceComparison& cmp) {
    std::string out = "t,l2_true_vs_reference,l2_lighthill_vs_reference,l2_true_vs_lighthill\n";
    for (std::size_t i = 0; i < cmp.times.size(); ++i)
        out += fmt(cmp.times[i]) + "," + fmt(cmp.true_vs_reference[i]) + "," +
               fmt(cmp.lighthill_vs_reference[i]) + "," + fmt(cmp.true_vs_lighthill[i]) + "\n";
    return out;
}

double plane_wave_impedance_residual(const RunConfig& cfg, const FlowProvider& provider,
                                     const Grid& grid) {
    std::array<double, kMaxDim> n{};
    double norm = 0.0;
    for (int i = 0; i < cfg.dim; ++i) {
        n[i] = 2.0 * 3.14159265358979323846 * cfg.wave_k[i] / cfg.grid_length;
        norm += n[i] * n[i];
    }
    norm = std::sqrt(norm);
    if (norm == 0.0) return 0.0;
    for (int i = 0; i < cfg.dim; ++i) n[i] /= norm;

    const FlowSnapshot snap = sample_flow(provider, grid, 0.0);
    const double p0 = config_p0(cfg);
    double un_max = 0.0;
    for (std::size_t m = 0; m < snap.p.size(); ++m) {
        double un = 0.0;
        for (int i = 0; i < cfg.dim; ++i) un += (snap.u.comp(i)[m] - cfg.u0[i]) * n[i];
        un_max = std::max(un_max, std::abs(un));
    }
    if (un_max == 0.0) return 0.0;
    double residual = 0.0;
    for (std::size_t m = 0; m < snap.p.size(); ++m) {
        double un = 0.0;
        for (int i = 0; i < cfg.dim; ++i) un += (snap.u.comp(i)[m] - cfg.u0[i]) * n[i];
        if (std::abs(un) < 1e-3 * un_max) continue; // skip wave nodes
        residual = std::max(residual,
                            std::abs((snap.p[m] - p0) / un - cfg.rho0 * cfg.c));
    }
    return residual;
}

} // namespace

RunOutputs run(const RunConfig& cfg) {
    validate_config(cfg);
    const Grid grid = config_grid(cfg);
    const std::vector<double> sample_times = config_sample_times(cfg);

    RunOutputs out;
    out.directory = cfg.output_dir;
    std::error_code ec;
    fs::create_directories(cfg.output_dir, ec);
    if (ec && !fs::is_directory(cfg.output_dir))
        throw IoError("cannot create output directory '" + cfg.output_dir + "'");

    const std::unique_ptr<FlowProvider> provider =
        stage("scenario", [&] { return make_provider(cfg); });

    // Early step-size check: every stage downstream marches with central
    // spatial operators, so the tighter bound applies to dt as configured.
    {
        const double cfl =
            cfg.dt * (provider->max_speed() + cfg.c) / grid.min_spacing();
        if (cfl > 0.3 * (1.0 + 1e-12))
            throw ConfigError("dt", "dt: step gives dt (max|u|+c)/h = " + fmt_short(cfl) +
                                        " which exceeds the central-operator limit 0.3");
    }

    const BaseFlow bf = stage("baseflow", [&] {
        return compute_base_flow(*provider, grid, cfg.tau, config_baseflow_dt(cfg),
                                 linspace(0.0, cfg.tau, cfg.baseflow_samples));
    });
    stage("baseflow", [&] {
        write_base_flow(bf, (fs::path(cfg.output_dir) / "baseflow").string());
        return 0;
    });
    out.baseflow = check_base_flow_properties(bf);
    out.ma_re = residual_ma_re(*provider);
    out.scales = stage("diagnostics", [&] { return scale_separation(*provider, bf, 0.0); });
    if (cfg.scenario == ScenarioKind::plane_wave || cfg.scenario == ScenarioKind::uniform)
        out.impedance_residual = plane_wave_impedance_residual(cfg, *provider, grid);

    // Perturbation trajectory recorded at the sample times.
    std::vector<PerturbationState> trajectory;
    stage("evolution", [&] {
        PerturbationState state = make_initial_state(sample_flow(*provider, grid, 0.0), bf);
        const double T = cfg.time_span;
        const double ttol = 1e-9 * std::max(1.0, T);
        std::size_t next = 0;
        double t = 0.0;
        const auto record = [&] {
            while (next < sample_times.size() && std::abs(sample_times[next] - t) <= ttol) {
                trajectory.push_back(state);
                ++next;
            }
        };
        record();
        while (t < T - ttol) {
            double target = std::min(T, t + cfg.dt);
            if (next < sample_times.size())
                target = std::min(target, std::max(sample_times[next], t + ttol));
            state = step(state, bf, t, target - t, cfg.flux_mode);
            t = target;
            record();
        }
        if (trajectory.size() != sample_times.size())
            throw ContractViolation("recorded " + std::to_string(trajectory.size()) +
                                    " of " + std::to_string(sample_times.size()) + " samples");
        return 0;
    });

    // Splitting of every recorded state; final split written out.
    std::vector<SplitCertificates> certs;
    stage("splitting", [&] {
        for (std::size_t i = 0; i < trajectory.size(); ++i) {
            const VectorField u_prime = trajectory[i].u_prime();
            const SplitVelocity split = helmholtz_split(u_prime);
            certs.push_back(split_certificates(u_prime, split));
            if (i + 1 == trajectory.size()) {
                const fs::path d(cfg.output_dir);
                write_field((d / "pprime_final.afld").string(), trajectory[i].p_prime());
                write_field((d / "uprime_final.afld").string(), u_prime);
                write_field((d / "uprime_final.ua.afld").string(), split.acoustic);
                write_field((d / "uprime_final.uv.afld").string(), split.vortical);
                write_field((d / "potential_final.afld").string(), split.potential);
                out.final_certificates = certs.back();
            }
        }
        return 0;
    });

    out.energy = stage("diagnostics", [&] {
        return conservation_drift(sample_times, trajectory);
    });

    if (cfg.time_span > 0.0) {
        out.sources = stage("sources", [&] {
            return compare_sources(*provider, bf, cfg.time_span, cfg.dt, sample_times);
        });
    }

    if (trajectory.size() >= 2 && uniformly_spaced(sample_times)) {
        const IntensityField intens = stage("diagnostics", [&] {
            return intensity(sample_times, trajectory, bf, trajectory.size());
        });
        out.intensity_window = intens.window;
        out.intensity_div_norm = intens.div_norm;
        stage("diagnostics", [&] {
            write_field((fs::path(cfg.output_dir) / "intensity.afld").string(), intens.I);
            return 0;
        });
    }

    // Emitted files.
    stage("outputs", [&] {
        const fs::path d(cfg.output_dir);
        write_text(d / "config.echo", serialize_config(cfg));
        write_text(d / "energy.csv", energy_csv(out.energy));
        write_text(d / "certificates.csv", certificates_csv(sample_times, certs));
        if (!out.sources.times.empty()) write_text(d / "sources.csv", sources_csv(out.sources));

        std::string s;
        s += "run summary\n";
        s += "scenario          = " + std::string(to_string(cfg.scenario)) + "\n";
        s += "grid              = " + std::to_string(cfg.dim) + "D, " +
             std::to_string(cfg.grid_n) + " cells/axis, length " + fmt_short(cfg.grid_length) +
             "\n";
        s += "tau               = " + fmt_short(cfg.tau) + "\n";
        s += "dt, time_span     = " + fmt_short(cfg.dt) + ", " + fmt_short(cfg.time_span) + "\n";
        s += "flux mode         = " +
             std::string(cfg.flux_mode == FluxMode::central ? "central" : "upwind") + "\n";
        s += "seed              = " + std::to_string(cfg.seed) + "\n";
        s += "\nbackground\n";
        s += "  p_bar                    = " + fmt(bf.p_bar()) + "\n";
        s += "  rho_bar                  = " + fmt(bf.rho_bar()) + "\n";
        s += "  c                        = " + fmt(bf.sound_speed()) + "\n";
        s += "  mach, reynolds           = " + fmt_short(out.ma_re.mach) + ", " +
             fmt_short(out.ma_re.reynolds) + "\n";
        s += "  mach/reynolds            = " + fmt_short(out.ma_re.ma_over_re) + "\n";
        s += "\nbase-flow residuals\n";
        s += "  max |div ubar|           = " + fmt_short(out.baseflow.max_divergence) + "\n";
        s += "  max |material rate|      = " +
             fmt_short(out.baseflow.max_material_derivative) + "\n";
        s += "  max |grad contraction|   = " +
             fmt_short(out.baseflow.max_gradient_contraction) + "\n";
        s += "  |rho_bar - p_bar/c^2|    = " +
             fmt_short(out.baseflow.state_relation_residual) + "\n";
        s += "\nscale separation at t = 0\n";
        s += "  |rho'|/rho_bar           = " + fmt_short(out.scales.rho_ratio) + "\n";
        s += "  |u'|/|ubar|              = " + fmt_short(out.scales.u_ratio) + "\n";
        s += "  |p'|/p_bar               = " + fmt_short(out.scales.p_ratio) + "\n";
        s += "  fluctuation mach         = " + fmt_short(out.scales.fluct_mach) + "\n";
        if (!out.energy.times.empty()) {
            const std::size_t last = out.energy.times.size() - 1;
            const double eta = out.energy.total_eta[last];
            const double sum = out.energy.total_acoustic[last] + out.energy.total_vortical[last];
            const double idres = eta != 0.0 ? std::abs(eta - sum) / std::abs(eta) : 0.0;
            s += "\nenergy\n";
            s += "  initial total            = " + fmt(out.energy.total_eta.front()) + "\n";
            s += "  final total              = " + fmt(eta) + "\n";
            s += "  relative drift           = " + fmt_short(out.energy.drift[last]) + "\n";
            s += "  final acoustic, vortical = " + fmt(out.energy.total_acoustic[last]) + ", " +
                 fmt(out.energy.total_vortical[last]) + "\n";
            s += "  split identity residual  = " + fmt_short(idres) + "\n";
        }
        s += "\nsplitting certificates (final state)\n";
        s += "  max |curl u_a|           = " + fmt_short(out.final_certificates.curl_acoustic) +
             "\n";
        s += "  max |div u_v|            = " + fmt_short(out.final_certificates.div_vortical) +
             "\n";
        s += "  recombination            = " + fmt_short(out.final_certificates.recombination) +
             "\n";
        s += "  potential residual       = " +
             fmt_short(out.final_certificates.potential_residual) + "\n";
        if (!out.sources.times.empty()) {
            const std::size_t last = out.sources.times.size() - 1;
            s += "\nsource comparison at final time\n";
            s += "  L2(convective - reference)= " + fmt_short(out.sources.true_vs_reference[last]) +
                 "\n";
            s += "  L2(stationary - reference)= " +
                 fmt_short(out.sources.lighthill_vs_reference[last]) + "\n";
            s += "  L2(convective - stationary)= " +
                 fmt_short(out.sources.true_vs_lighthill[last]) + "\n";
        }
        if (out.intensity_window > 0.0) {
            s += "\nintensity\n";
            s += "  window                   = " + fmt_short(out.intensity_window) + "\n";
            s += "  max |div I|              = " + fmt_short(out.intensity_div_norm) + "\n";
        }
        if (cfg.scenario == ScenarioKind::plane_wave || cfg.scenario == ScenarioKind::uniform) {
            s += "\nimpedance\n";
            s += "  max |p'/(u'.n) - rho0 c| = " + fmt_short(out.impedance_residual) + "\n";
        }
        write_text(d / "summary.txt", s);
        return 0;
    });
    return out;
}

BaseFlowPropertyReport run_baseflow(const RunConfig& cfg) {
    validate_config(cfg);
    const Grid grid = config_grid(cfg);
    std::error_code ec;
    fs::create_directories(cfg.output_dir, ec);
    if (ec && !fs::is_directory(cfg.output_dir))
        throw IoError("cannot create output directory '" + cfg.output_dir + "'");
    const std::unique_ptr<FlowProvider> provider =
        stage("scenario", [&] { return make_provider(cfg); });
    const BaseFlow bf = stage("baseflow", [&] {
        return compute_base_flow(*provider, grid, cfg.tau, config_baseflow_dt(cfg),
                                 linspace(0.0, cfg.tau, cfg.baseflow_samples));
    });
    write_base_flow(bf, (fs::path(cfg.output_dir) / "baseflow").string());
    return check_base_flow_properties(bf);
}

} // namespace pathwave
