#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "pathwave/field.hpp"
#include "pathwave/grid.hpp"

namespace pathwave {

/// One flow state on the grid at a fixed time, with its (constant) speed of
/// sound.
struct FlowSnapshot {
    double t = 0.0;
    ScalarField rho;
    VectorField u;
    ScalarField p;
    double c = 1.0;
};

/// Time-dependent flow data source. Closed-form kinds evaluate exactly at
/// arbitrary points and times inside their validity window; the ingested
/// series kind interpolates (limited cubic in space, linear in time).
///
/// Pointwise evaluation accepts coordinates outside [0, length) and wraps
/// them, so characteristic tracing can step across the periodic seam.
class FlowProvider {
public:
    virtual ~FlowProvider() = default;

    virtual const Grid& grid() const = 0;
    virtual double sound_speed() const = 0;
    virtual double mach() const = 0;
    virtual double reynolds() const = 0;

    virtual double t_begin() const = 0;
    virtual double t_end() const = 0;

    virtual std::array<double, kMaxDim> velocity(double t,
                                                 const std::array<double, kMaxDim>& x) const = 0;
    virtual double pressure(double t, const std::array<double, kMaxDim>& x) const = 0;
    virtual double density(double t, const std::array<double, kMaxDim>& x) const = 0;

    /// Upper bound on the pointwise speed over the validity window.
    virtual double max_speed() const = 0;

    void require_time(double t) const;
};

/// Uniform background u0 plus an optional acoustic plane wave riding on it.
/// The wave has pressure amplitude P, integer wavevector k (periodic by
/// construction), velocity fluctuation (P/(rho0 c)) sin(phase) along the
/// propagation normal, density fluctuation p'/c^2, and angular frequency
/// u0.k + c|k|, i.e. it rides downstream at speed c relative to the
/// background. Amplitude 0 gives plain uniform flow.
class UniformPlaneWaveProvider : public FlowProvider {
public:
    UniformPlaneWaveProvider(const Grid& grid, std::array<double, kMaxDim> u0, double rho0,
                             double p0, double c, double amplitude,
                             std::array<int, kMaxDim> wave_k, double phase0, double mach,
                             double reynolds);

    const Grid& grid() const override { return grid_; }
    double sound_speed() const override { return c_; }
    double mach() const override { return mach_; }
    double reynolds() const override { return reynolds_; }
    double t_begin() const override { return -1e300; }
    double t_end() const override { return 1e300; }
    std::array<double, kMaxDim> velocity(double t,
                                         const std::array<double, kMaxDim>& x) const override;
    double pressure(double t, const std::array<double, kMaxDim>& x) const override;
    double density(double t, const std::array<double, kMaxDim>& x) const override;
    double max_speed() const override;

    /// sin(k.x - omega t + phase0) scaled by the pressure amplitude.
    double wave_pressure(double t, const std::array<double, kMaxDim>& x) const;
    const std::array<double, kMaxDim>& wave_normal() const { return normal_; }

private:
    double phase(double t, const std::array<double, kMaxDim>& x) const;

    Grid grid_;
    std::array<double, kMaxDim> u0_;
    double rho0_, p0_, c_, amplitude_;
    std::array<double, kMaxDim> k_phys_{};
    std::array<double, kMaxDim> normal_{};
    double omega_ = 0.0;
    double phase0_;
    double mach_, reynolds_;
};

/// Steady cellular vortex array: u = A (sin(kx)cos(ky), -cos(kx)sin(ky)),
/// p = p0 + rho0 A^2 (cos(2kx) + cos(2ky))/4, constant density. Square
/// domains only (the balance needs kx == ky). In 3D the pattern is
/// z-invariant with zero third component.
class TaylorGreenProvider : public FlowProvider {
public:
    TaylorGreenProvider(const Grid& grid, double amplitude, double rho0, double p0, double c,
                        double mach, double reynolds);

    const Grid& grid() const override { return grid_; }
    double sound_speed() const override { return c_; }
    double mach() const override { return mach_; }
    double reynolds() const override { return reynolds_; }
    double t_begin() const override { return -1e300; }
    double t_end() const override { return 1e300; }
    std::array<double, kMaxDim> velocity(double t,
                                         const std::array<double, kMaxDim>& x) const override;
    double pressure(double t, const std::array<double, kMaxDim>& x) const override;
    double density(double, const std::array<double, kMaxDim>&) const override { return rho0_; }
    double max_speed() const override { return std::abs(amplitude_); }

private:
    Grid grid_;
    double amplitude_, rho0_, p0_, c_, k_;
    double mach_, reynolds_;
};

/// Rigid rotation about the domain center, windowed to periodic-compatible
/// support by a C^2 radial cutoff: angular rate omega for r <= 0.55 R, a
/// quintic smoothstep down to zero at 0.8 R (R = half the shortest domain
/// extent), zero outside. Pathlines are circles everywhere inside the
/// support; strictly inside the flat region they close with period
/// 2 pi / omega. Constant pressure and density.
class SolidRotationProvider : public FlowProvider {
public:
    SolidRotationProvider(const Grid& grid, double omega, double rho0, double p0, double c,
                          double mach, double reynolds);

    const Grid& grid() const override { return grid_; }
    double sound_speed() const override { return c_; }
    double mach() const override { return mach_; }
    double reynolds() const override { return reynolds_; }
    double t_begin() const override { return -1e300; }
    double t_end() const override { return 1e300; }
    std::array<double, kMaxDim> velocity(double t,
                                         const std::array<double, kMaxDim>& x) const override;
    double pressure(double, const std::array<double, kMaxDim>&) const override { return p0_; }
    double density(double, const std::array<double, kMaxDim>&) const override { return rho0_; }
    double max_speed() const override { return std::abs(omega_) * r_out_; }

    double window(double r) const;
    double inner_radius() const { return r_in_; }

private:
    Grid grid_;
    double omega_, rho0_, p0_, c_;
    double cx_, cy_, r_in_, r_out_;
    double mach_, reynolds_;
};

/// Spatially uniform, time-periodic flow u(t) = u0 + amp sin(2 pi t / period) e_dir.
class OscillatingUniformProvider : public FlowProvider {
public:
    OscillatingUniformProvider(const Grid& grid, std::array<double, kMaxDim> u0, double amp,
                               int dir_axis, double period, double rho0, double p0, double c,
                               double mach, double reynolds);

    const Grid& grid() const override { return grid_; }
    double sound_speed() const override { return c_; }
    double mach() const override { return mach_; }
    double reynolds() const override { return reynolds_; }
    double t_begin() const override { return -1e300; }
    double t_end() const override { return 1e300; }
    std::array<double, kMaxDim> velocity(double t,
                                         const std::array<double, kMaxDim>& x) const override;
    double pressure(double, const std::array<double, kMaxDim>&) const override { return p0_; }
    double density(double, const std::array<double, kMaxDim>&) const override { return rho0_; }
    double max_speed() const override;

private:
    Grid grid_;
    std::array<double, kMaxDim> u0_;
    double amp_;
    int dir_;
    double period_, rho0_, p0_, c_;
    double mach_, reynolds_;
};

/// Stored snapshots with linear interpolation in time. Valid only on
/// [first time, last time] and only on the native grid.
class SnapshotSeriesProvider : public FlowProvider {
public:
    SnapshotSeriesProvider(std::vector<FlowSnapshot> snapshots, double mach, double reynolds);

    const Grid& grid() const override { return grid_; }
    double sound_speed() const override { return c_; }
    double mach() const override { return mach_; }
    double reynolds() const override { return reynolds_; }
    double t_begin() const override { return snapshots_.front().t; }
    double t_end() const override { return snapshots_.back().t; }
    std::array<double, kMaxDim> velocity(double t,
                                         const std::array<double, kMaxDim>& x) const override;
    double pressure(double t, const std::array<double, kMaxDim>& x) const override;
    double density(double t, const std::array<double, kMaxDim>& x) const override;
    double max_speed() const override { return max_speed_; }

    const std::vector<FlowSnapshot>& snapshots() const { return snapshots_; }

    /// Exact raster blend at time t (no spatial interpolation).
    FlowSnapshot blend(double t) const;

private:
    struct Bracket {
        const FlowSnapshot* lo;
        const FlowSnapshot* hi;
        double w; // weight of hi
    };
    Bracket bracket(double t) const;

    Grid grid_;
    std::vector<FlowSnapshot> snapshots_;
    double c_ = 1.0;
    double max_speed_ = 0.0;
    double mach_, reynolds_;
};

/// Entry in a snapshot-series manifest.
struct SnapshotFiles {
    double t;
    std::string rho_path;
    std::string u_path;
    std::string p_path;
};

/// Loads the listed field files into a series provider. Times must be
/// strictly increasing and at least two; all files must share one grid.
std::unique_ptr<SnapshotSeriesProvider> ingest_snapshots(const std::vector<SnapshotFiles>& files,
                                                         double c, double mach, double reynolds);

/// Rasterizes the provider at time t. Closed-form providers accept any grid;
/// the series provider requires its native grid.
FlowSnapshot sample_flow(const FlowProvider& provider, const Grid& grid, double t);

} // namespace pathwave
