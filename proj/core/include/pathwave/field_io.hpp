#pragma once

#include <string>

#include "pathwave/field.hpp"

namespace pathwave {

/// Binary field files ("AFLD"):
///
///   bytes 0..3   magic "AFLD"
///   byte  4      version, currently 1
///   byte  5      dim (2 or 3)
///   byte  6      rank: 0 scalar, 1 vector
///   byte  7      padding, must be 0
///   next         dim x u32 little-endian cell counts
///   next         dim x f64 little-endian domain lengths
///   payload      f64 little-endian cell values, row-major (last axis
///                fastest); a vector field stores its components
///                consecutively, each as a full raster
///
/// Values round-trip bit-exactly. Readers throw MalformedHeader when the
/// magic/version/padding is wrong or the header is cut short,
/// DimensionMismatch when the declared shape is unusable or the rank is not
/// the one asked for, and TruncatedPayload when values are missing.

void write_field(const std::string& path, const ScalarField& f);
void write_field(const std::string& path, const VectorField& f);

ScalarField read_scalar_field(const std::string& path);
VectorField read_vector_field(const std::string& path);

} // namespace pathwave
