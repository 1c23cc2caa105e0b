#pragma once

#include <array>

#include "pathwave/field.hpp"

namespace pathwave {

/// Four-point Lagrange interpolation along one axis with a range clamp that
/// engages only when the stencil is monotone or its second differences
/// disagree in sign. On smooth resolved data the clamp is inert and the full
/// fourth-order accuracy survives (in particular sub-grid extrema are not
/// flattened); on monotone or oscillatory data the result is confined to the
/// bracketing node values, so transport cannot ring new extrema into
/// existence. Constants interpolate exactly.
///
/// s is the fractional position in [0, 1) between the two middle nodes. A
/// position landing exactly on a node evaluates with s = 0 in the cell whose
/// lower node it is, which is the deterministic tie-break at cell faces.
double interp1_limited(double fm1, double f0, double f1, double f2, double s);

/// Tensor-product interpolation of a periodic raster at a position given in
/// index units (coordinate / spacing per axis). Unused axes are ignored.
double interp_field(const ScalarField& f, const std::array<double, kMaxDim>& pos_index);

/// Componentwise vector version.
std::array<double, kMaxDim> interp_field(const VectorField& f,
                                         const std::array<double, kMaxDim>& pos_index);

} // namespace pathwave
