#pragma once

#include <vector>

#include "pathwave/baseflow.hpp"
#include "pathwave/field.hpp"
#include "pathwave/flow.hpp"

namespace pathwave {

enum class SourceKind {
    lighthill,   ///< double divergence of rho u (x) u, the classical analogy
    true_source, ///< double divergence of rho_bar u' (x) u', fluctuation-only
};

/// A scalar wave-equation source at one time. Mean-free by construction:
/// a double divergence of a periodic tensor integrates to zero.
struct SourceField {
    SourceKind kind = SourceKind::lighthill;
    double t = 0.0;
    ScalarField s;
};

/// d_i d_j (rho u_i u_j) with spectral derivatives; the quadratic product is
/// formed pointwise and truncated by the 2/3 rule before differentiating.
SourceField lighthill_source(const FlowSnapshot& snapshot);

/// d_i d_j (rho_bar u'_i u'_j), dealiased the same way.
SourceField true_source(const VectorField& u_prime, double rho_bar, double t = 0.0);

enum class Propagation {
    convective, ///< material transport by ubar in both equations
    stationary, ///< ubar forced to zero: the classical d_tt - c^2 Lap operator
};

struct WaveSolution {
    std::vector<double> times;
    std::vector<ScalarField> p;
};

/// Integrates the scalar wave equation in first-order form
///
///   (d_t + ubar.grad) p' = c^2 q
///   (d_t + ubar.grad) q  = Lap p' + S(t)
///
/// so that q = (material rate of p')/c^2 and eliminating q recovers
/// (1/c^2)(d_t + ubar.grad)^2 p' - Lap p' = S. `p0_rate` is the material
/// rate of p' at t = 0 (for a split initial velocity that is
/// -rho_bar c^2 div u_a). Sources are interpolated linearly in time and must
/// cover [0, T] unless the series is empty (then S = 0). Spatial operators
/// spectral, time integration 4-stage explicit with steps of at most dt,
/// shortened to land exactly on each requested sample time and on T.
/// CFL bound dt (max|ubar| + c)/h <= 0.3.
WaveSolution solve_convective_wave(const ScalarField& p0, const ScalarField& p0_rate,
                                   const BaseFlow& bf, const std::vector<SourceField>& sources,
                                   double T, double dt, const std::vector<double>& sample_times,
                                   Propagation propagation = Propagation::convective);

/// L2 distances between the three pressure predictions of one scenario:
/// the full linearized evolution (reference), the wave equation driven by
/// the fluctuation source with convective transport, and the same source
/// propagated with the stationary operator. Both wave runs share one source
/// series so any disagreement isolates the propagation operator.
struct SourceComparison {
    std::vector<double> times;
    std::vector<double> true_vs_reference;
    std::vector<double> lighthill_vs_reference;
    std::vector<double> true_vs_lighthill;
};

SourceComparison compare_sources(const FlowProvider& scenario, const BaseFlow& bf, double T,
                                 double dt, const std::vector<double>& sample_times);

} // namespace pathwave
