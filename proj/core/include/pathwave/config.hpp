#pragma once

#include <array>
#include <string>
#include <vector>

#include "pathwave/perturbation.hpp"

namespace pathwave {

enum class ScenarioKind {
    uniform,        ///< constant background, zero fluctuation
    plane_wave,     ///< acoustic plane wave riding a uniform background
    taylor_green,   ///< steady vortex array
    solid_rotation, ///< rigidly rotating core with a smooth rim
    oscillating,    ///< spatially uniform, sinusoidally accelerating flow
    snapshots,      ///< series of stored fields listed in a manifest
};

const char* to_string(ScenarioKind kind);

/// One run, fully described. Flat key = value text format, `#` comments,
/// snake_case keys, unknown keys rejected with a nearest-key suggestion.
/// Serialization emits every key, so parse(serialize(c)) == c.
struct RunConfig {
    ScenarioKind scenario = ScenarioKind::plane_wave;
    int dim = 2;
    int grid_n = 64;
    double grid_length = 6.283185307179586;
    double tau = 1.0;       ///< base-flow averaging window
    double dt = 0.005;      ///< perturbation/wave time step
    double time_span = 1.0; ///< simulated span T <= tau
    FluxMode flux_mode = FluxMode::central;
    std::string output_dir = "run";
    int sample_count = 11;             ///< uniform sample times over [0, T]
    std::vector<double> sample_times;  ///< explicit override when non-empty
    unsigned long long seed = 1;

    // Background / scenario parameters.
    std::array<double, 3> u0{0.0, 0.0, 0.0};
    double rho0 = 1.0;
    double p0 = -1.0; ///< negative means "default to rho0 c^2"
    double c = 1.0;
    double mach = 0.1;
    double reynolds = 1.0e4;
    double amplitude = 0.01;     ///< wave pressure / vortex speed / drift speed
    std::array<int, 3> wave_k{1, 0, 0};
    double phase = 0.0;
    double omega = 1.0;          ///< solid-rotation angular rate
    double period = 1.0;         ///< oscillation period
    int oscillate_axis = 0;
    std::string snapshot_manifest;

    // Base-flow sweep controls.
    double baseflow_dt = 0.0; ///< 0 means "use dt"
    int baseflow_samples = 9;

    bool operator==(const RunConfig&) const = default;
};

/// Parses config text. Throws ConfigError naming the offending key; unknown
/// keys get a nearest-known-key suggestion when one is close enough.
RunConfig parse_config(const std::string& text);

/// Reads and parses a config file. Throws IoError when unreadable.
RunConfig load_config(const std::string& path);

/// Emits every key in a fixed order with full precision.
std::string serialize_config(const RunConfig& config);

/// Checks every invariant that does not require running; throws ConfigError
/// naming the first offending key.
void validate_config(const RunConfig& config);

/// The resolved output sample times: the explicit list when given, else
/// sample_count uniform times spanning [0, time_span] inclusive.
std::vector<double> config_sample_times(const RunConfig& config);

/// Effective quantities.
double config_p0(const RunConfig& config);          ///< p0, defaulted to rho0 c^2
double config_baseflow_dt(const RunConfig& config); ///< baseflow_dt, defaulted to dt

} // namespace pathwave
