#pragma once

#include <vector>

#include "pathwave/field.hpp"
#include "pathwave/flow.hpp"

namespace pathwave {

/// One integrated trajectory of dx/dt = u(t, x). Positions are stored
/// wrapped into the periodic box.
struct Pathline {
    std::array<double, kMaxDim> seed{};
    std::vector<double> times;
    std::vector<std::array<double, kMaxDim>> positions;
};

/// Classical 4-stage one-step integration from t0 to t1 with step dt (the
/// final step is shortened to land on t1 exactly). Positions at every step
/// are recorded, seeds included.
std::vector<Pathline> integrate_pathlines(const FlowProvider& provider,
                                          const std::vector<std::array<double, kMaxDim>>& seeds,
                                          double t0, double t1, double dt);

/// Which of the provider's fields is being averaged.
struct FieldSelector {
    enum Kind { pressure, velocity } kind = pressure;
    int component = 0; // used by velocity

    static FieldSelector p() { return {pressure, 0}; }
    static FieldSelector u(int comp) { return {velocity, comp}; }
};

/// Integrates dg/dt along pathlines = f / tau with g(0) = 0 up to t = tau,
/// i.e. the running pathline average of field f. Semi-Lagrangian: one
/// backward characteristic trace per cell per step (4-stage one-step),
/// limited-cubic interpolation of the carried field at the departure point,
/// and trapezoidal source quadrature along the traced segment. Enforces
/// dt * max|u| / min spacing <= 4.
ScalarField accumulate_forward(const FlowProvider& provider, const Grid& grid, FieldSelector f,
                               double tau, double dt);

/// Transports end-of-window values backward: solves the homogeneous
/// advection equation from t = tau down to the requested sample times
/// (ascending, within [0, tau]) and returns the field at each, same scheme
/// as accumulate_forward with the characteristic direction reversed.
std::vector<ScalarField> transport_backward(const FlowProvider& provider,
                                            const ScalarField& end_values, double tau, double dt,
                                            const std::vector<double>& sample_times);

/// Pathline-averaged background flow: velocity samples at selected times,
/// constant background pressure (the spatial mean of the pressure average)
/// and the density p_bar / c^2 that goes with it.
class BaseFlow {
public:
    BaseFlow() = default;
    BaseFlow(Grid grid, double tau, std::vector<double> sample_times,
             std::vector<VectorField> u_samples, double p_bar, double c);

    const Grid& grid() const { return grid_; }
    double tau() const { return tau_; }
    double p_bar() const { return p_bar_; }
    double rho_bar() const { return rho_bar_; }
    double sound_speed() const { return c_; }

    const std::vector<double>& sample_times() const { return times_; }
    const VectorField& sample_field(std::size_t i) const { return samples_[i]; }
    std::size_t sample_count() const { return samples_.size(); }

    /// Piecewise-linear in time between samples, clamped at the ends.
    VectorField velocity_at(double t) const;
    double max_speed_at(double t) const;

    /// Uniform background shortcut used by tests and synthetic runs.
    static BaseFlow uniform(const Grid& grid, std::array<double, kMaxDim> u0, double p_bar,
                            double c, double tau);

private:
    Grid grid_;
    double tau_ = 0.0;
    std::vector<double> times_;
    std::vector<VectorField> samples_;
    double p_bar_ = 0.0;
    double rho_bar_ = 0.0;
    double c_ = 1.0;
};

/// Runs the forward accumulation for pressure and every velocity component,
/// then transports each velocity average back to the sample times.
BaseFlow compute_base_flow(const FlowProvider& provider, const Grid& grid, double tau, double dt,
                           const std::vector<double>& sample_times);

/// Residual magnitudes of the structural properties the averaged flow
/// satisfies asymptotically. Reported, never thresholded here.
struct BaseFlowPropertyReport {
    double max_divergence = 0.0;           ///< max |div ubar| over samples
    double max_material_derivative = 0.0;  ///< discrete d(ubar)/dt + ubar.grad(ubar)
    double max_gradient_contraction = 0.0; ///< max |sum_ij d_i ubar_j d_j ubar_i|
    double state_relation_residual = 0.0;  ///< |rho_bar - p_bar / c^2|
};

BaseFlowPropertyReport check_base_flow_properties(const BaseFlow& bf);

} // namespace pathwave
