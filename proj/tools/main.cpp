// Command-line front end: run | validate | split | baseflow.
//
// Exit codes: 0 success, 1 validation failure (bad config, bad input file
// shape), 2 runtime failure (pipeline errors, I/O errors mid-run).

#include <cstdio>
#include <filesystem>
#include <string>

#include <CLI11.hpp>

#include "pathwave/config.hpp"
#include "pathwave/errors.hpp"
#include "pathwave/field_io.hpp"
#include "pathwave/runner.hpp"
#include "pathwave/splitting.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitRuntime = 2;

int cmd_run(const std::string& config_path) {
    pathwave::RunConfig cfg;
    try {
        cfg = pathwave::load_config(config_path);
        pathwave::validate_config(cfg);
    } catch (const pathwave::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInvalid;
    }
    try {
        const pathwave::RunOutputs out = pathwave::run(cfg);
        std::printf("run complete: %s\n", out.directory.c_str());
        std::printf("  energy drift (final)     %.6g\n",
                    out.energy.drift.empty() ? 0.0 : out.energy.drift.back());
        std::printf("  splitting recombination  %.6g\n", out.final_certificates.recombination);
        std::printf("  see %s/summary.txt\n", out.directory.c_str());
        return kExitOk;
    } catch (const pathwave::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitRuntime;
    }
}

int cmd_validate(const std::string& config_path) {
    try {
        const pathwave::RunConfig cfg = pathwave::load_config(config_path);
        pathwave::validate_config(cfg);
    } catch (const pathwave::Error& e) {
        std::fprintf(stderr, "invalid: %s\n", e.what());
        return kExitInvalid;
    }
    std::printf("ok\n");
    return kExitOk;
}

int cmd_split(const std::string& field_path) {
    pathwave::VectorField u;
    try {
        u = pathwave::read_vector_field(field_path);
    } catch (const pathwave::Error& e) {
        std::fprintf(stderr, "invalid: %s\n", e.what());
        return kExitInvalid;
    }
    try {
        const pathwave::SplitVelocity split = pathwave::helmholtz_split(u);
        const pathwave::SplitCertificates certs = pathwave::split_certificates(u, split);

        std::filesystem::path base(field_path);
        base.replace_extension(); // strip .afld
        pathwave::write_field(base.string() + ".ua.afld", split.acoustic);
        pathwave::write_field(base.string() + ".uv.afld", split.vortical);
        pathwave::write_field(base.string() + ".phi.afld", split.potential);

        std::printf("wrote %s.{ua,uv,phi}.afld\n", base.string().c_str());
        std::printf("  max |curl u_a|      %.6g\n", certs.curl_acoustic);
        std::printf("  max |div u_v|       %.6g\n", certs.div_vortical);
        std::printf("  recombination       %.6g\n", certs.recombination);
        std::printf("  potential residual  %.6g\n", certs.potential_residual);
        return kExitOk;
    } catch (const pathwave::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitRuntime;
    }
}

int cmd_baseflow(const std::string& config_path) {
    pathwave::RunConfig cfg;
    try {
        cfg = pathwave::load_config(config_path);
        pathwave::validate_config(cfg);
    } catch (const pathwave::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInvalid;
    }
    try {
        const pathwave::BaseFlowPropertyReport rep = pathwave::run_baseflow(cfg);
        std::printf("base flow written to %s/baseflow\n", cfg.output_dir.c_str());
        std::printf("  max |div ubar|           %.6g\n", rep.max_divergence);
        std::printf("  max |material rate|      %.6g\n", rep.max_material_derivative);
        std::printf("  max |grad contraction|   %.6g\n", rep.max_gradient_contraction);
        std::printf("  |rho_bar - p_bar/c^2|    %.6g\n", rep.state_relation_residual);
        return kExitOk;
    } catch (const pathwave::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitRuntime;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pathwave: pathline-averaged base flows, linearized perturbation\n"
                 "evolution, acoustic/vortical splitting, and sound-source diagnostics\n"
                 "on periodic grids"};
    app.require_subcommand(1);

    std::string run_config, validate_config_path, split_field, baseflow_config;

    CLI::App* run_cmd = app.add_subcommand("run", "Execute the full pipeline for a config file");
    run_cmd->add_option("config", run_config, "config file (key = value lines)")
        ->required()
        ->check(CLI::ExistingFile);

    CLI::App* validate_cmd =
        app.add_subcommand("validate", "Check a config file without running");
    validate_cmd->add_option("config", validate_config_path, "config file to check")
        ->required()
        ->check(CLI::ExistingFile);

    CLI::App* split_cmd = app.add_subcommand(
        "split", "Split a velocity field file into curl-free and divergence-free parts");
    split_cmd->add_option("field", split_field, "vector field (.afld)")
        ->required()
        ->check(CLI::ExistingFile);

    CLI::App* baseflow_cmd =
        app.add_subcommand("baseflow", "Compute and store only the averaged base flow");
    baseflow_cmd->add_option("config", baseflow_config, "config file (key = value lines)")
        ->required()
        ->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitInvalid;
    }

    if (run_cmd->parsed()) return cmd_run(run_config);
    if (validate_cmd->parsed()) return cmd_validate(validate_config_path);
    if (split_cmd->parsed()) return cmd_split(split_field);
    if (baseflow_cmd->parsed()) return cmd_baseflow(baseflow_config);
    return kExitInvalid;
}
