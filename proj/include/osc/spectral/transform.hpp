#pragma once

#include <array>
#include <functional>
#include <span>

#include "osc/spectral/field.hpp"

namespace osc {

// Forward transform with 1/N^d normalization, so a constant c maps to
// u(0) = c and mean |f|^2 = sum |u(k)|^2.
SpectralField forward(const PointField& f);
SpectralField forward(const ComplexPointField& f);

// Inverse transform. For a real-flagged field the imaginary parts are
// discarded (they vanish up to round-off).
PointField inverse(const SpectralField& f);
ComplexPointField inverse_complex(const SpectralField& f);

// Unnormalized in-place transforms on one component (sign -1 forward).
void fft_forward(const Grid& grid, std::span<cplx> data);
void fft_backward(const Grid& grid, std::span<cplx> data);

struct ShiftEvaluation {
  ComplexPointField values;
  bool overflow = false;
  // max |k.y| over modes with a nonzero coefficient
  double max_exponent = 0.0;
};

// f(x + iy) = sum u(k) e^{ik.x} e^{-k.y}. When the exponent would exceed 700
// the values are set to infinity and the overflow flag is raised.
ShiftEvaluation evaluate_complex_shift(const SpectralField& f, std::span<const double> y);

// Samples fn(x, out) at every grid point; out has room for m values.
PointField sample(const Grid& grid, int components,
                  const std::function<void(const std::array<double, 3>&, double*)>& fn);

// Grid point coordinates of a flat point index.
std::array<double, 3> position(const Grid& grid, std::size_t flat);

}  // namespace osc
