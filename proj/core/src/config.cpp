#include "pathwave/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "pathwave/errors.hpp"

namespace pathwave {

const char* to_string(ScenarioKind kind) {
    switch (kind) {
    case ScenarioKind::uniform: return "uniform";
    case ScenarioKind::plane_wave: return "plane_wave";
    case ScenarioKind::taylor_green: return "taylor_green";
    case ScenarioKind::solid_rotation: return "solid_rotation";
    case ScenarioKind::oscillating: return "oscillating";
    case ScenarioKind::snapshots: return "snapshots";
    }
    return "unknown";
}

namespace {

const char* const kKnownKeys[] = {
    "scenario",      "dim",
    "grid_n",        "grid_length",
    "tau",           "dt",
    "time_span",     "flux_mode",
    "output_dir",    "sample_count",
    "sample_times",  "seed",
    "u0_x",          "u0_y",
    "u0_z",          "rho0",
    "p0",            "c",
    "mach",          "reynolds",
    "amplitude",     "wave_kx",
    "wave_ky",       "wave_kz",
    "phase",         "omega",
    "period",        "oscillate_axis",
    "snapshot_manifest",
    "baseflow_dt",   "baseflow_samples",
};

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::size_t levenshtein(const std::string& a, const std::string& b) {
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

std::string nearest_key(const std::string& key) {
    std::string best;
    std::size_t best_dist = static_cast<std::size_t>(-1);
    for (const char* known : kKnownKeys) {
        const std::size_t d = levenshtein(key, known);
        if (d < best_dist) {
            best_dist = d;
            best = known;
        }
    }
    const std::size_t cutoff = std::max<std::size_t>(2, key.size() / 3);
    return best_dist <= cutoff ? best : std::string();
}

double parse_double(const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size() || !std::isfinite(x))
        throw ConfigError(key, key + ": expected a finite number, got '" + value + "'");
    return x;
}

long long parse_int(const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    char* end = nullptr;
    const long long x = std::strtoll(v.c_str(), &end, 10);
    if (v.empty() || end != v.c_str() + v.size())
        throw ConfigError(key, key + ": expected an integer, got '" + value + "'");
    return x;
}

unsigned long long parse_uint(const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    char* end = nullptr;
    const unsigned long long x = std::strtoull(v.c_str(), &end, 10);
    if (v.empty() || end != v.c_str() + v.size() || v[0] == '-')
        throw ConfigError(key, key + ": expected a non-negative integer, got '" + value + "'");
    return x;
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::string item;
    std::stringstream ss(value);
    while (std::getline(ss, item, ',')) {
        if (trim(item).empty() && out.empty() && ss.eof()) break; // wholly empty value
        out.push_back(parse_double(key, item));
    }
    return out;
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace

RunConfig parse_config(const std::string& text) {
    std::map<std::string, std::string> entries;
    std::stringstream lines(text);
    std::string line;
    int lineno = 0;
    while (std::getline(lines, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("", "line " + std::to_string(lineno) +
                                      ": expected 'key = value', got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty() ||
            key.find_first_not_of("abcdefghijklmnopqrstuvwxyz0123456789_") != std::string::npos)
            throw ConfigError(key, "line " + std::to_string(lineno) +
                                       ": keys must be snake_case, got '" + key + "'");
        if (!entries.emplace(key, trim(line.substr(eq + 1))).second)
            throw ConfigError(key, "duplicate key '" + key + "'");
    }

    RunConfig cfg;
    const auto take = [&](const char* key) -> const std::string* {
        const auto it = entries.find(key);
        if (it == entries.end()) return nullptr;
        return &it->second;
    };

    if (const std::string* v = take("scenario")) {
        bool found = false;
        for (ScenarioKind k :
             {ScenarioKind::uniform, ScenarioKind::plane_wave, ScenarioKind::taylor_green,
              ScenarioKind::solid_rotation, ScenarioKind::oscillating, ScenarioKind::snapshots}) {
            if (*v == to_string(k)) {
                cfg.scenario = k;
                found = true;
            }
        }
        if (!found)
            throw ConfigError("scenario",
                              "scenario: unknown kind '" + *v +
                                  "' (expected uniform, plane_wave, taylor_green, "
                                  "solid_rotation, oscillating, or snapshots)");
    }
    if (const std::string* v = take("dim")) cfg.dim = static_cast<int>(parse_int("dim", *v));
    if (const std::string* v = take("grid_n"))
        cfg.grid_n = static_cast<int>(parse_int("grid_n", *v));
    if (const std::string* v = take("grid_length")) cfg.grid_length = parse_double("grid_length", *v);
    if (const std::string* v = take("tau")) cfg.tau = parse_double("tau", *v);
    if (const std::string* v = take("dt")) cfg.dt = parse_double("dt", *v);
    if (const std::string* v = take("time_span")) cfg.time_span = parse_double("time_span", *v);
    if (const std::string* v = take("flux_mode")) {
        if (*v == "central") cfg.flux_mode = FluxMode::central;
        else if (*v == "upwind") cfg.flux_mode = FluxMode::upwind;
        else
            throw ConfigError("flux_mode", "flux_mode: expected central or upwind, got '" + *v +
                                               "'");
    }
    if (const std::string* v = take("output_dir")) cfg.output_dir = *v;
    if (const std::string* v = take("sample_count"))
        cfg.sample_count = static_cast<int>(parse_int("sample_count", *v));
    if (const std::string* v = take("sample_times"))
        cfg.sample_times = parse_list("sample_times", *v);
    if (const std::string* v = take("seed")) cfg.seed = parse_uint("seed", *v);
    if (const std::string* v = take("u0_x")) cfg.u0[0] = parse_double("u0_x", *v);
    if (const std::string* v = take("u0_y")) cfg.u0[1] = parse_double("u0_y", *v);
    if (const std::string* v = take("u0_z")) cfg.u0[2] = parse_double("u0_z", *v);
    if (const std::string* v = take("rho0")) cfg.rho0 = parse_double("rho0", *v);
    if (const std::string* v = take("p0")) cfg.p0 = parse_double("p0", *v);
    if (const std::string* v = take("c")) cfg.c = parse_double("c", *v);
    if (const std::string* v = take("mach")) cfg.mach = parse_double("mach", *v);
    if (const std::string* v = take("reynolds")) cfg.reynolds = parse_double("reynolds", *v);
    if (const std::string* v = take("amplitude")) cfg.amplitude = parse_double("amplitude", *v);
    if (const std::string* v = take("wave_kx"))
        cfg.wave_k[0] = static_cast<int>(parse_int("wave_kx", *v));
    if (const std::string* v = take("wave_ky"))
        cfg.wave_k[1] = static_cast<int>(parse_int("wave_ky", *v));
    if (const std::string* v = take("wave_kz"))
        cfg.wave_k[2] = static_cast<int>(parse_int("wave_kz", *v));
    if (const std::string* v = take("phase")) cfg.phase = parse_double("phase", *v);
    if (const std::string* v = take("omega")) cfg.omega = parse_double("omega", *v);
    if (const std::string* v = take("period")) cfg.period = parse_double("period", *v);
    if (const std::string* v = take("oscillate_axis"))
        cfg.oscillate_axis = static_cast<int>(parse_int("oscillate_axis", *v));
    if (const std::string* v = take("snapshot_manifest")) cfg.snapshot_manifest = *v;
    if (const std::string* v = take("baseflow_dt")) cfg.baseflow_dt = parse_double("baseflow_dt", *v);
    if (const std::string* v = take("baseflow_samples"))
        cfg.baseflow_samples = static_cast<int>(parse_int("baseflow_samples", *v));

    for (const auto& [key, value] : entries) {
        (void)value;
        if (std::find_if(std::begin(kKnownKeys), std::end(kKnownKeys),
                         [&](const char* k) { return key == k; }) != std::end(kKnownKeys))
            continue;
        std::string msg = "unknown key '" + key + "'";
        const std::string suggestion = nearest_key(key);
        if (!suggestion.empty()) msg += " (did you mean '" + suggestion + "'?)";
        throw ConfigError(key, msg);
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string serialize_config(const RunConfig& cfg) {
    std::string out;
    const auto kv = [&](const char* key, const std::string& value) {
        out += key;
        out += " = ";
        out += value;
        out += '\n';
    };
    kv("scenario", to_string(cfg.scenario));
    kv("dim", std::to_string(cfg.dim));
    kv("grid_n", std::to_string(cfg.grid_n));
    kv("grid_length", format_double(cfg.grid_length));
    kv("tau", format_double(cfg.tau));
    kv("dt", format_double(cfg.dt));
    kv("time_span", format_double(cfg.time_span));
    kv("flux_mode", cfg.flux_mode == FluxMode::central ? "central" : "upwind");
    kv("output_dir", cfg.output_dir);
    kv("sample_count", std::to_string(cfg.sample_count));
    {
        std::string list;
        for (std::size_t i = 0; i < cfg.sample_times.size(); ++i) {
            if (i) list += ", ";
            list += format_double(cfg.sample_times[i]);
        }
        kv("sample_times", list);
    }
    kv("seed", std::to_string(cfg.seed));
    kv("u0_x", format_double(cfg.u0[0]));
    kv("u0_y", format_double(cfg.u0[1]));
    kv("u0_z", format_double(cfg.u0[2]));
    kv("rho0", format_double(cfg.rho0));
    kv("p0", format_double(cfg.p0));
    kv("c", format_double(cfg.c));
    kv("mach", format_double(cfg.mach));
    kv("reynolds", format_double(cfg.reynolds));
    kv("amplitude", format_double(cfg.amplitude));
    kv("wave_kx", std::to_string(cfg.wave_k[0]));
    kv("wave_ky", std::to_string(cfg.wave_k[1]));
    kv("wave_kz", std::to_string(cfg.wave_k[2]));
    kv("phase", format_double(cfg.phase));
    kv("omega", format_double(cfg.omega));
    kv("period", format_double(cfg.period));
    kv("oscillate_axis", std::to_string(cfg.oscillate_axis));
    kv("snapshot_manifest", cfg.snapshot_manifest);
    kv("baseflow_dt", format_double(cfg.baseflow_dt));
    kv("baseflow_samples", std::to_string(cfg.baseflow_samples));
    return out;
}

void validate_config(const RunConfig& cfg) {
    const auto fail = [](const char* key, const std::string& msg) {
        throw ConfigError(key, std::string(key) + ": " + msg);
    };
    if (cfg.dim != 2 && cfg.dim != 3) fail("dim", "must be 2 or 3");
    if (cfg.grid_n < 4 || cfg.grid_n % 2 != 0 || cfg.grid_n > 1024)
        fail("grid_n", "must be even, at least 4, and at most 1024");
    if (!(cfg.grid_length > 0.0)) fail("grid_length", "must be positive");
    if (!(cfg.tau > 0.0)) fail("tau", "must be positive");
    if (!(cfg.dt > 0.0)) fail("dt", "must be positive");
    if (!(cfg.time_span >= 0.0)) fail("time_span", "must be non-negative");
    if (cfg.time_span > cfg.tau * (1.0 + 1e-12))
        fail("time_span", "must not exceed tau (the base flow only covers [0, tau])");
    if (cfg.output_dir.empty()) fail("output_dir", "must not be empty");
    if (cfg.sample_count < 1) fail("sample_count", "must be at least 1");
    for (std::size_t i = 0; i < cfg.sample_times.size(); ++i) {
        const double t = cfg.sample_times[i];
        if (t < 0.0 || t > cfg.time_span * (1.0 + 1e-12))
            fail("sample_times", "entries must lie in [0, time_span]");
        if (i > 0 && !(t > cfg.sample_times[i - 1]))
            fail("sample_times", "entries must be strictly increasing");
    }
    if (!(cfg.rho0 > 0.0)) fail("rho0", "must be positive");
    if (cfg.p0 == 0.0) fail("p0", "must be positive (or negative to use rho0 c^2)");
    if (!(cfg.c > 0.0)) fail("c", "must be positive");
    if (!(cfg.mach >= 0.0)) fail("mach", "must be non-negative");
    if (!(cfg.reynolds > 0.0)) fail("reynolds", "must be positive");
    if (!std::isfinite(cfg.amplitude)) fail("amplitude", "must be finite");
    if (cfg.scenario == ScenarioKind::plane_wave && cfg.amplitude != 0.0) {
        bool any = false;
        for (int i = 0; i < cfg.dim; ++i) any = any || cfg.wave_k[i] != 0;
        if (!any) fail("wave_kx", "plane wave needs a non-zero wavevector");
    }
    if (cfg.scenario == ScenarioKind::oscillating) {
        if (!(cfg.period > 0.0)) fail("period", "must be positive");
        if (cfg.oscillate_axis < 0 || cfg.oscillate_axis >= cfg.dim)
            fail("oscillate_axis", "must name an axis below dim");
    }
    if (cfg.scenario == ScenarioKind::solid_rotation && !std::isfinite(cfg.omega))
        fail("omega", "must be finite");
    if (cfg.scenario == ScenarioKind::snapshots && cfg.snapshot_manifest.empty())
        fail("snapshot_manifest", "required for the snapshots scenario");
    if (!(cfg.baseflow_dt >= 0.0)) fail("baseflow_dt", "must be non-negative (0 uses dt)");
    if (cfg.baseflow_samples < 2) fail("baseflow_samples", "must be at least 2");
}

std::vector<double> config_sample_times(const RunConfig& cfg) {
    if (!cfg.sample_times.empty()) return cfg.sample_times;
    std::vector<double> times;
    if (cfg.sample_count == 1 || cfg.time_span == 0.0) {
        times.push_back(cfg.time_span);
        return times;
    }
    for (int i = 0; i < cfg.sample_count; ++i)
        times.push_back(i + 1 == cfg.sample_count
                            ? cfg.time_span
                            : cfg.time_span * i / (cfg.sample_count - 1));
    return times;
}

double config_p0(const RunConfig& cfg) {
    return cfg.p0 < 0.0 ? cfg.rho0 * cfg.c * cfg.c : cfg.p0;
}

double config_baseflow_dt(const RunConfig& cfg) {
    return cfg.baseflow_dt > 0.0 ? cfg.baseflow_dt : cfg.dt;
}

} // namespace pathwave
