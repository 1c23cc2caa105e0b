#pragma once

#include "pathwave/baseflow.hpp"
#include "pathwave/field.hpp"
#include "pathwave/flow.hpp"
#include "pathwave/smallmat.hpp"

namespace pathwave {

/// Conserved perturbation state: a scaled pressure p'/(rho_bar c^2) and the
/// momentum fluctuation rho_bar u', together d+1 components.
struct PerturbationState {
    ScalarField scaled_pressure;
    VectorField momentum;
    double rho_bar = 1.0;
    double c = 1.0;

    static PerturbationState zeros(const Grid& grid, double rho_bar, double c);
    /// Builds the conserved variables from physical fluctuations. The
    /// density fluctuation is implied as p'/c^2.
    static PerturbationState from_fluctuations(const ScalarField& p_prime,
                                               const VectorField& u_prime, double rho_bar,
                                               double c);

    const Grid& grid() const { return scaled_pressure.grid(); }
    int dim() const { return momentum.dim(); }

    ScalarField p_prime() const;
    VectorField u_prime() const;
    ScalarField rho_prime() const;

    void require_valid() const;
};

/// Difference of fluctuation snapshot and base flow at one time: u - ubar(t)
/// and p - p_bar, packed as conserved variables.
PerturbationState make_initial_state(const FlowSnapshot& snapshot, const BaseFlow& bf);

/// Directional coefficient matrix A(nu) = sum_i nu_i A_i for a unit
/// direction nu, evaluated at one point of the background:
///
///   A_i = ubar_i I + (1/rho_bar) e_1 e_{i+1}^T + rho_bar c^2 e_{i+1} e_1^T
///
/// Symmetric only in the special scaling rho_bar^2 c^2 = 1; the energy
/// method works with the symmetrizer in the diagnostics module instead.
SmallMat coefficient_matrix(const std::array<double, kMaxDim>& u_bar, double rho_bar, double c,
                            const std::array<double, kMaxDim>& nu, int dim);

/// Analytic eigensystem of A(nu). Eigenvalues ascend:
/// ubar.nu - c, then ubar.nu repeated d-1 times, then ubar.nu + c, so the
/// acoustic pair sits at the two ends with the minus branch leading and the
/// shear columns between them. The acoustic columns are (1, -+ c rho_bar nu);
/// the shear columns are (0, nu_p e_j - nu_j e_p) built on the largest
/// component p of nu, which in 2D reduces to (0, (nu_2, -nu_1)).
struct EigenSystem {
    int n = 0;
    SmallMat R;
    SmallMat R_inv;
    std::array<double, 4> lambda{};
};

EigenSystem eigendecompose(const std::array<double, kMaxDim>& u_bar, double rho_bar, double c,
                           const std::array<double, kMaxDim>& nu, int dim);

enum class FluxMode {
    upwind,  ///< first-order characteristic flux splitting, dissipative
    central, ///< pseudo-spectral flux divergence, energy-conserving
};

/// One 4-stage time step of d_t U + d_i(A_i U) = 0 from time t. The
/// background velocity is interpolated from the base flow at the stage
/// times. Enforces dt (max|ubar| + c) / min spacing <= 0.5 (upwind) or
/// <= 0.3 (central).
PerturbationState step(const PerturbationState& state, const BaseFlow& bf, double t, double dt,
                       FluxMode mode);

struct ScaleResidual {
    double mach = 0.0;
    double reynolds = 0.0;
    double ma_over_re = 0.0;
};

/// Ma/Re of the provider; the magnitude that bounds the neglected viscous
/// terms relative to the retained ones.
ScaleResidual residual_ma_re(const FlowProvider& provider);

} // namespace pathwave
