#pragma once

#include <array>
#include <optional>
#include <span>

#include "osc/spectral/field.hpp"

namespace osc {

// Time-independent band-limited forcing f with its extension partner. Unless
// a partner g is given, (F, G) along y = alpha t are the real and imaginary
// parts of f(x + i alpha t).
struct ForcingSpec {
  std::optional<SpectralField> f;
  std::optional<SpectralField> g;
  // Radius over which Gamma is sampled. Band-limited data extend to every
  // radius; this only bounds the sampling.
  double delta_f = 1.0;

  bool zero() const { return !f && !g; }
  // (F, G) at time t for the shift vector alpha.
  ComplexPair at(const Grid& grid, int components, double t, std::span<const double> alpha) const;
};

// Throws ConfigError when f or g is not divergence-free to 1e-12 (relative to
// max |k||f(k)|) or does not live on the grid.
void validate_forcing(const ForcingSpec& spec, const Grid& grid);

// Gamma = sup_{|y| <= delta_f} (||Re f(. + iy)||_bmo + ||Im f(. + iy)||_bmo),
// sampled at |y| in {0, delta_f/2, delta_f} along the probe directions. With
// a user partner g, Gamma = ||f||_bmo + ||g||_bmo.
double forcing_level(const ForcingSpec& spec);

// (c(k) + conj c(-k))/2 and (c(k) - conj c(-k))/(2i): the real and imaginary
// parts of the complex field with coefficients c.
ComplexPair split_complex(const SpectralField& c);

}  // namespace osc
