#pragma once

#include <vector>

#include "pathwave/baseflow.hpp"
#include "pathwave/field.hpp"
#include "pathwave/flow.hpp"
#include "pathwave/perturbation.hpp"
#include "pathwave/smallmat.hpp"

namespace pathwave {

/// Symmetrizer data for the conservation law. The time matrix is constant,
///
///   A0 = diag(1/(rho_bar^2 c^2), 1, ..., 1),
///
/// and each directional matrix depends on the cell only through the local
/// background velocity component:
///
///   A_i(x) = ubar_i(x) A0 + (e_1 e_{i+1}^T + e_{i+1} e_1^T)/rho_bar.
///
/// Both are symmetric; A0 is positive definite.
struct SymmetrizerSet {
    SmallMat A0;
    std::vector<SmallMat> coupling; ///< constant part of A_i, one per axis
    VectorField ubar;               ///< background velocity at the evaluation time

    /// Assembles A_i at one cell (by flat index).
    SmallMat directional(int axis, std::size_t cell) const;
};

/// Symmetry variables V = (rho_bar p', rho_bar u'); the first slot rescales
/// the conserved variable by rho_bar^2 c^2, the momentum slots are shared.
struct SymmetricState {
    ScalarField v1;
    VectorField vu;
};

struct Symmetrized {
    SymmetricState V;
    SymmetrizerSet mats;
};

/// Builds V and the symmetrizer matrices at time t, verifying symmetry of
/// every assembled matrix to 1e-14.
Symmetrized symmetrize(const PerturbationState& state, const BaseFlow& bf, double t);

/// Energy density eta = (p'^2/c^2 + rho_bar^2 |u'|^2)/2 == V^T A0 V / 2.
ScalarField energy_density(const PerturbationState& state);

/// Energy flux q_i = eta ubar_i + rho_bar p' u'_i == V^T A_i V / 2.
VectorField energy_flux(const PerturbationState& state, const BaseFlow& bf, double t);

/// Grid totals of the energy split, per stored time.
struct EnergyReport {
    std::vector<double> times;
    std::vector<double> total_eta;      ///< integral of eta
    std::vector<double> total_acoustic; ///< integral of (p'^2/c^2 + rho^2|u_a|^2)/2
    std::vector<double> total_vortical; ///< integral of rho^2|u_v|^2/2
    std::vector<double> drift;          ///< (total_eta - total_eta[0]) / |total_eta[0]|
};

EnergyReport conservation_drift(const std::vector<double>& times,
                                const std::vector<PerturbationState>& trajectory);

/// Time-averaged perturbed intensity I = avg(E ubar + p' u') over the first
/// `window_samples` stored states, with E = (p'^2/(rho_bar c^2)
/// + rho_bar |u'|^2)/2. The samples are treated as left endpoints of equal
/// subintervals, so averaging a sinusoid over exactly one period is exact;
/// stored times must be uniformly spaced.
struct IntensityField {
    VectorField I;
    double window = 0.0;   ///< averaged time span: window_samples * step
    double div_norm = 0.0; ///< max |div I|, spectral
};

IntensityField intensity(const std::vector<double>& times,
                         const std::vector<PerturbationState>& trajectory, const BaseFlow& bf,
                         std::size_t window_samples);

/// Size of the fluctuations relative to the background at time t. Ratios
/// with a zero denominator report 0 when the numerator is also 0 and
/// infinity otherwise.
struct ScaleReport {
    double rho_ratio = 0.0;  ///< max|rho - rho_bar| / rho_bar
    double u_ratio = 0.0;    ///< max|u - ubar| / max|ubar|
    double p_ratio = 0.0;    ///< max|p - p_bar| / |p_bar|
    double fluct_mach = 0.0; ///< max|u - ubar| / c
};

ScaleReport scale_separation(const FlowProvider& provider, const BaseFlow& bf, double t);

} // namespace pathwave
