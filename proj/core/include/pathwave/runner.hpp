#pragma once

#include <memory>
#include <string>

#include "pathwave/acoustics.hpp"
#include "pathwave/baseflow.hpp"
#include "pathwave/config.hpp"
#include "pathwave/diagnostics.hpp"
#include "pathwave/flow.hpp"
#include "pathwave/splitting.hpp"

namespace pathwave {

/// The grid described by a config: square/cubic, grid_n cells per axis.
Grid config_grid(const RunConfig& config);

/// Builds the scenario behind a config. The snapshots scenario reads its
/// manifest (lines `time rho.afld u.afld p.afld`, paths relative to the
/// manifest); every other kind is closed-form.
std::unique_ptr<FlowProvider> make_provider(const RunConfig& config);

/// Writes a base flow as a manifest plus one velocity file per sample:
///   <dir>/baseflow.txt, <dir>/ubar_000.afld, ...
void write_base_flow(const BaseFlow& bf, const std::string& dir);

/// Reads back what write_base_flow wrote.
BaseFlow read_base_flow(const std::string& dir);

/// Everything a finished run reports, next to where it was written.
struct RunOutputs {
    std::string directory;
    BaseFlowPropertyReport baseflow;
    ScaleReport scales;
    ScaleResidual ma_re;
    EnergyReport energy;
    SplitCertificates final_certificates;
    SourceComparison sources;       ///< empty when time_span == 0
    double intensity_window = 0.0;  ///< 0 when skipped
    double intensity_div_norm = 0.0;
    double impedance_residual = 0.0; ///< plane-wave scenario only, else 0
};

/// Runs the whole pipeline: scenario -> base flow -> perturbation evolution
/// -> splitting -> source comparison -> diagnostics. Writes AFLD fields,
/// CSVs, `summary.txt`, and `config.echo` into config.output_dir. The same
/// config produces byte-identical CSVs. Stage failures are rethrown with
/// the stage name prefixed.
RunOutputs run(const RunConfig& config);

/// The base-flow-only pipeline: computes, writes into
/// `<output_dir>/baseflow`, and reports the property residuals.
BaseFlowPropertyReport run_baseflow(const RunConfig& config);

} // namespace pathwave
