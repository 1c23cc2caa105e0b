#include "pathwave/flow.hpp"

#include <cmath>

#include "pathwave/errors.hpp"
#include "pathwave/field_io.hpp"
#include "pathwave/interp.hpp"

namespace pathwave {

namespace {
constexpr double kPi = 3.14159265358979323846;
} // namespace

void FlowProvider::require_time(double t) const {
    if (t < t_begin() || t > t_end())
        throw ContractViolation("time " + std::to_string(t) +
                                " outside the provider validity window");
}

UniformPlaneWaveProvider::UniformPlaneWaveProvider(
    const Grid& grid, std::array<double, kMaxDim> u0, double rho0, double p0, double c,
    double amplitude, std::array<int, kMaxDim> wave_k, double phase0, double mach,
    double reynolds)
    : grid_(grid), u0_(u0), rho0_(rho0), p0_(p0), c_(c), amplitude_(amplitude),
      phase0_(phase0), mach_(mach), reynolds_(reynolds) {
    if (!(rho0 > 0.0) || !(c > 0.0))
        throw ContractViolation("plane-wave scenario needs positive rho0 and c");
    double k2 = 0.0;
    for (int a = 0; a < grid_.dim(); ++a) {
        k_phys_[a] = 2.0 * kPi * wave_k[a] / grid_.length(a);
        k2 += k_phys_[a] * k_phys_[a];
    }
    if (k2 == 0.0) {
        if (amplitude_ != 0.0)
            throw ContractViolation("plane wave needs a nonzero integer wavevector");
        return;
    }
    const double kn = std::sqrt(k2);
    double u0k = 0.0;
    for (int a = 0; a < grid_.dim(); ++a) {
        normal_[a] = k_phys_[a] / kn;
        u0k += u0_[a] * k_phys_[a];
    }
    omega_ = u0k + c_ * kn;
}

double UniformPlaneWaveProvider::phase(double t, const std::array<double, kMaxDim>& x) const {
    double ph = phase0_ - omega_ * t;
    for (int a = 0; a < grid_.dim(); ++a) ph += k_phys_[a] * x[a];
    return ph;
}

double UniformPlaneWaveProvider::wave_pressure(double t,
                                               const std::array<double, kMaxDim>& x) const {
    if (amplitude_ == 0.0) return 0.0;
    return amplitude_ * std::sin(phase(t, x));
}

std::array<double, kMaxDim> UniformPlaneWaveProvider::velocity(
    double t, const std::array<double, kMaxDim>& x) const {
    std::array<double, kMaxDim> u = u0_;
    if (amplitude_ != 0.0) {
        const double s = wave_pressure(t, x) / (rho0_ * c_);
        for (int a = 0; a < grid_.dim(); ++a) u[a] += s * normal_[a];
    }
    return u;
}

double UniformPlaneWaveProvider::pressure(double t, const std::array<double, kMaxDim>& x) const {
    return p0_ + wave_pressure(t, x);
}

double UniformPlaneWaveProvider::density(double t, const std::array<double, kMaxDim>& x) const {
    return rho0_ + wave_pressure(t, x) / (c_ * c_);
}

double UniformPlaneWaveProvider::max_speed() const {
    double s = 0.0;
    for (int a = 0; a < grid_.dim(); ++a) s += u0_[a] * u0_[a];
    return std::sqrt(s) + std::abs(amplitude_) / (rho0_ * c_);
}

TaylorGreenProvider::TaylorGreenProvider(const Grid& grid, double amplitude, double rho0,
                                         double p0, double c, double mach, double reynolds)
    : grid_(grid), amplitude_(amplitude), rho0_(rho0), p0_(p0), c_(c),
      mach_(mach), reynolds_(reynolds) {
    if (grid.length(0) != grid.length(1))
        throw ContractViolation("the cellular vortex scenario needs length_x == length_y");
    k_ = 2.0 * kPi / grid.length(0);
}

std::array<double, kMaxDim> TaylorGreenProvider::velocity(
    double, const std::array<double, kMaxDim>& x) const {
    std::array<double, kMaxDim> u{};
    u[0] = amplitude_ * std::sin(k_ * x[0]) * std::cos(k_ * x[1]);
    u[1] = -amplitude_ * std::cos(k_ * x[0]) * std::sin(k_ * x[1]);
    return u;
}

double TaylorGreenProvider::pressure(double, const std::array<double, kMaxDim>& x) const {
    return p0_ + rho0_ * amplitude_ * amplitude_ *
                     (std::cos(2.0 * k_ * x[0]) + std::cos(2.0 * k_ * x[1])) / 4.0;
}

SolidRotationProvider::SolidRotationProvider(const Grid& grid, double omega, double rho0,
                                             double p0, double c, double mach, double reynolds)
    : grid_(grid), omega_(omega), rho0_(rho0), p0_(p0), c_(c),
      mach_(mach), reynolds_(reynolds) {
    cx_ = grid.length(0) / 2.0;
    cy_ = grid.length(1) / 2.0;
    const double half = std::min(grid.length(0), grid.length(1)) / 2.0;
    r_in_ = 0.55 * half;
    r_out_ = 0.8 * half;
}

double SolidRotationProvider::window(double r) const {
    if (r <= r_in_) return 1.0;
    if (r >= r_out_) return 0.0;
    const double x = (r - r_in_) / (r_out_ - r_in_);
    // Quintic smoothstep: C^2 at both ends.
    return 1.0 - x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
}

std::array<double, kMaxDim> SolidRotationProvider::velocity(
    double, const std::array<double, kMaxDim>& x) const {
    const double dx = grid_.wrap_coord(0, x[0]) - cx_;
    const double dy = grid_.wrap_coord(1, x[1]) - cy_;
    const double r = std::sqrt(dx * dx + dy * dy);
    const double s = omega_ * window(r);
    std::array<double, kMaxDim> u{};
    u[0] = -s * dy;
    u[1] = s * dx;
    return u;
}

OscillatingUniformProvider::OscillatingUniformProvider(const Grid& grid,
                                                       std::array<double, kMaxDim> u0, double amp,
                                                       int dir_axis, double period, double rho0,
                                                       double p0, double c, double mach,
                                                       double reynolds)
    : grid_(grid), u0_(u0), amp_(amp), dir_(dir_axis), period_(period), rho0_(rho0), p0_(p0),
      c_(c), mach_(mach), reynolds_(reynolds) {
    if (!(period > 0.0)) throw ContractViolation("oscillation period must be positive");
    if (dir_axis < 0 || dir_axis >= grid.dim())
        throw ContractViolation("oscillation direction axis out of range");
}

std::array<double, kMaxDim> OscillatingUniformProvider::velocity(
    double t, const std::array<double, kMaxDim>&) const {
    std::array<double, kMaxDim> u = u0_;
    u[dir_] += amp_ * std::sin(2.0 * kPi * t / period_);
    return u;
}

double OscillatingUniformProvider::max_speed() const {
    double s = 0.0;
    for (int a = 0; a < grid_.dim(); ++a) s += u0_[a] * u0_[a];
    return std::sqrt(s) + std::abs(amp_);
}

SnapshotSeriesProvider::SnapshotSeriesProvider(std::vector<FlowSnapshot> snapshots, double mach,
                                               double reynolds)
    : snapshots_(std::move(snapshots)), mach_(mach), reynolds_(reynolds) {
    if (snapshots_.size() < 2)
        throw ContractViolation("a snapshot series needs at least two snapshots");
    grid_ = snapshots_.front().u.grid();
    c_ = snapshots_.front().c;
    for (std::size_t i = 0; i < snapshots_.size(); ++i) {
        const FlowSnapshot& s = snapshots_[i];
        if (s.u.grid() != grid_ || s.rho.grid() != grid_ || s.p.grid() != grid_)
            throw DimensionMismatch("snapshot " + std::to_string(i) +
                                    " is not on the series grid");
        if (s.c != c_)
            throw ContractViolation("snapshots disagree on the speed of sound");
        if (i > 0 && !(s.t > snapshots_[i - 1].t))
            throw ContractViolation("snapshot times must be strictly increasing");
        max_speed_ = std::max(max_speed_, s.u.max_norm());
    }
}

SnapshotSeriesProvider::Bracket SnapshotSeriesProvider::bracket(double t) const {
    require_time(t);
    std::size_t hi = 1;
    while (hi + 1 < snapshots_.size() && snapshots_[hi].t < t) ++hi;
    const FlowSnapshot& a = snapshots_[hi - 1];
    const FlowSnapshot& b = snapshots_[hi];
    const double w = (t - a.t) / (b.t - a.t);
    return {&a, &b, w};
}

std::array<double, kMaxDim> SnapshotSeriesProvider::velocity(
    double t, const std::array<double, kMaxDim>& x) const {
    const Bracket br = bracket(t);
    std::array<double, kMaxDim> pos{};
    for (int a = 0; a < grid_.dim(); ++a) pos[a] = x[a] / grid_.spacing(a);
    const auto ulo = interp_field(br.lo->u, pos);
    const auto uhi = interp_field(br.hi->u, pos);
    std::array<double, kMaxDim> u{};
    for (int a = 0; a < grid_.dim(); ++a) u[a] = (1.0 - br.w) * ulo[a] + br.w * uhi[a];
    return u;
}

double SnapshotSeriesProvider::pressure(double t, const std::array<double, kMaxDim>& x) const {
    const Bracket br = bracket(t);
    std::array<double, kMaxDim> pos{};
    for (int a = 0; a < grid_.dim(); ++a) pos[a] = x[a] / grid_.spacing(a);
    return (1.0 - br.w) * interp_field(br.lo->p, pos) + br.w * interp_field(br.hi->p, pos);
}

double SnapshotSeriesProvider::density(double t, const std::array<double, kMaxDim>& x) const {
    const Bracket br = bracket(t);
    std::array<double, kMaxDim> pos{};
    for (int a = 0; a < grid_.dim(); ++a) pos[a] = x[a] / grid_.spacing(a);
    return (1.0 - br.w) * interp_field(br.lo->rho, pos) + br.w * interp_field(br.hi->rho, pos);
}

FlowSnapshot SnapshotSeriesProvider::blend(double t) const {
    const Bracket br = bracket(t);
    FlowSnapshot out;
    out.t = t;
    out.c = c_;
    out.rho = (1.0 - br.w) * br.lo->rho + br.w * br.hi->rho;
    out.p = (1.0 - br.w) * br.lo->p + br.w * br.hi->p;
    out.u = (1.0 - br.w) * br.lo->u + br.w * br.hi->u;
    return out;
}

std::unique_ptr<SnapshotSeriesProvider> ingest_snapshots(const std::vector<SnapshotFiles>& files,
                                                         double c, double mach, double reynolds) {
    if (files.size() < 2)
        throw ContractViolation("a snapshot series needs at least two snapshots");
    std::vector<FlowSnapshot> snaps;
    snaps.reserve(files.size());
    for (const SnapshotFiles& f : files) {
        FlowSnapshot s;
        s.t = f.t;
        s.c = c;
        s.rho = read_scalar_field(f.rho_path);
        s.u = read_vector_field(f.u_path);
        s.p = read_scalar_field(f.p_path);
        snaps.push_back(std::move(s));
    }
    return std::make_unique<SnapshotSeriesProvider>(std::move(snaps), mach, reynolds);
}

FlowSnapshot sample_flow(const FlowProvider& provider, const Grid& grid, double t) {
    provider.require_time(t);
    if (const auto* series = dynamic_cast<const SnapshotSeriesProvider*>(&provider)) {
        if (grid != series->grid())
            throw DimensionMismatch("snapshot series can only be sampled on its native grid");
        return series->blend(t);
    }
    FlowSnapshot out;
    out.t = t;
    out.c = provider.sound_speed();
    out.rho = ScalarField::sample(
        grid, [&](const std::array<double, kMaxDim>& x) { return provider.density(t, x); });
    out.p = ScalarField::sample(
        grid, [&](const std::array<double, kMaxDim>& x) { return provider.pressure(t, x); });
    out.u = VectorField::sample(
        grid, [&](const std::array<double, kMaxDim>& x) { return provider.velocity(t, x); });
    return out;
}

} // namespace pathwave
