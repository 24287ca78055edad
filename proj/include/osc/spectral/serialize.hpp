#pragma once

#include <string>

#include "osc/spectral/field.hpp"

namespace osc {

// Binary layout, all little-endian:
//   bytes  0-3   "OSCF"
//   bytes  4-7   u32 version (1)
//   bytes  8-11  u32 dimension d
//   bytes 12-15  u32 points per axis N
//   bytes 16-19  u32 component count m
//   bytes 20-23  u32 flags (bit 0: reality flag)
//   bytes 24-31  f64 period L
// followed by m * N^d (re, im) f64 pairs in component-major flat order.
// A JSON sidecar at path + ".json" mirrors header and coefficients.
void write_field(const std::string& path, const SpectralField& f, bool sidecar = true);
SpectralField read_field(const std::string& path);

}  // namespace osc
