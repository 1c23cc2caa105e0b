#pragma once

#include <vector>

#include "pathwave/baseflow.hpp"
#include "pathwave/field.hpp"
#include "pathwave/smallmat.hpp"

namespace pathwave {

/// Helmholtz decomposition of a periodic velocity fluctuation into a
/// curl-free acoustic part and a divergence-free vortical part, with the
/// scalar potential of the acoustic part.
///
/// The spatial mean (zero wavevector) is curl- and divergence-free at once;
/// it is assigned to the vortical part so the acoustic part is mean-free and
/// the potential well defined. Modes whose derivative wavenumber vanishes
/// entirely (pure Nyquist combinations) go the same way, which makes the
/// certificates exact: the curl, the divergence, and this projector all
/// annihilate precisely the same modes.
struct SplitVelocity {
    VectorField acoustic;  ///< curl-free part, mean-free
    VectorField vortical;  ///< divergence-free part, carries the mean
    ScalarField potential; ///< acoustic == gradient(potential) spectrally
};

SplitVelocity helmholtz_split(const VectorField& u_prime);

/// Max-norm certificates of one split against its input. All derivatives
/// spectral, so each value is roundoff-sized for a correct split.
struct SplitCertificates {
    double curl_acoustic = 0.0;      ///< max |curl acoustic|
    double div_vortical = 0.0;       ///< max |div vortical|
    double recombination = 0.0;      ///< max |input - (acoustic + vortical)|
    double potential_residual = 0.0; ///< max |acoustic - grad potential|
};

SplitCertificates split_certificates(const VectorField& u_prime, const SplitVelocity& split);

/// Pressure plus acoustic-velocity divergence: the pair that evolves as a
/// closed subsystem regardless of the vortical content.
struct AcousticState {
    ScalarField p_prime;
    ScalarField div_ua;
};

/// One 4-stage step of the closed acoustic pair
///
///   (d_t + ubar.grad) p'          = -rho_bar c^2 (div u_a)
///   (d_t + ubar.grad) (div u_a)   = -(1/rho_bar) Lap p'
///
/// with spectral spatial operators. Same CFL bound as the central-mode full
/// step: dt (max|ubar| + c) / h <= 0.3.
AcousticState acoustic_subsystem_step(const ScalarField& p_prime, const ScalarField& div_ua,
                                      const BaseFlow& bf, double t, double dt);

/// Inverts the divergence on the curl-free subspace: the unique mean-free
/// gradient field with the given divergence (spectral division by i alpha,
/// zero mode fixed to zero).
VectorField acoustic_velocity_from_divergence(const ScalarField& div_ua);

/// Discrete residual of the vortical constraint
///
///   curl[ (d_t + ubar.grad) u_v ] + curl[ div(u_a x ubar) ] = 0,
///
/// where div contracts the second tensor slot: div(a x b)_j = d_i(a_j b_i).
/// The time derivative is the centered difference of the first two series
/// entries (samples at t and t + dt); everything else is evaluated at the
/// midpoint t + dt/2 with averaged fields.
struct VorticalResidual {
    ScalarField curl2; ///< 2D: scalar curl of the residual momentum balance
    VectorField curl3; ///< 3D: vector curl
    double inf_norm = 0.0;
};

VorticalResidual vortical_constraint_residual(const std::vector<VectorField>& u_v_series,
                                              const std::vector<VectorField>& u_a_series,
                                              const BaseFlow& bf, double t, double dt);

/// Mode-space projection matrices for one integer wavevector alpha != 0 in
/// the physical variables (p', u'): the diagonalizer R of the symbol, the
/// wave part Lambda = diag(-|alpha| c, +|alpha| c, 0, ...) (the frequency
/// shift common to all eigenvalues is dropped), selectors I_a, I_v for the
/// two wave columns and their complement, the velocity-space projectors
/// B = alpha alpha^T/|alpha|^2 and C = I - B, and the assembled products
/// P_a = R I_a R^-1 = diag(1, B) and P_v = R I_v R^-1 = diag(0, C).
///
/// The projectors are independent of the background velocity; it is accepted
/// and validated only to make that independence part of the interface.
struct ProjectorSet {
    int dim = 0;
    SmallMat R;        ///< (d+1) x (d+1), acoustic columns first
    SmallMat R_inv;
    SmallMat Lambda;   ///< diag(-|alpha|c, |alpha|c, 0, ...)
    SmallMat I_a;      ///< e1 e1^T + e2 e2^T
    SmallMat I_v;      ///< I - I_a
    SmallMat B;        ///< d x d velocity projector onto alpha
    SmallMat C;        ///< d x d complement
    SmallMat P_a;      ///< R I_a R^-1
    SmallMat P_v;      ///< R I_v R^-1
};

ProjectorSet spectral_projectors(const std::array<int, kMaxDim>& alpha,
                                 const std::array<double, kMaxDim>& u_bar, double rho_bar,
                                 double c, int dim);

} // namespace pathwave
