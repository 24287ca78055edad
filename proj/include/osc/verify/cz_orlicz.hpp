#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "osc/spectral/field.hpp"

namespace osc {

// Even Calderon-Zygmund operator with symbol P(k)/|k|^2, P a harmonic
// quadratic; its kernel is c P(x)/|x|^{d+2}.
struct CzOperator {
  std::string name;
  std::function<double(const std::array<double, 3>&)> harmonic;  // P

  SpectralField apply(const SpectralField& f) const;
  // P(z) on the unit sphere, the angular part of the kernel.
  double kernel_on_sphere(const std::array<double, 3>& z) const { return harmonic(z); }
};

// d = 2: R1R2 and R1^2 - R2^2. d = 3: derivatives of the Biot-Savart
// velocity of f e_3, d1 u1 (symbol -k1k2/|k|^2) and d1 u2 + d2 u1
// (symbol (k1^2 - k2^2)/|k|^2).
std::vector<CzOperator> cz_operators(int dim);

// Unit-sphere rule with weights summing to 1: 64 uniform angles (d = 2) or
// the 50-point Lebedev rule, exact through degree 11 (d = 3).
struct SphereRule {
  std::vector<std::array<double, 3>> nodes;
  std::vector<double> weights;
};
SphereRule sphere_rule(int dim);

// Mean of the kernel's angular part over the unit sphere.
double kernel_cancellation(const CzOperator& op, int dim);

// Cell-averaged weights of g_t(x) = t^{-d} g(x/t), g(x) = pi^{-d/2} e^{-|x|^2},
// periodized on the grid (flat point order, offsets from the origin).
std::vector<double> gaussian_cell_weights(const Grid& grid, double t);

// Circular convolution of point values with a kernel in the same layout.
std::vector<double> circular_convolve(const Grid& grid, const std::vector<double>& values,
                                      const std::vector<double>& kernel);

// Trigonometric interpolant on the grid refined by `factor` (Nyquist modes
// dropped).
SpectralField upsample(const SpectralField& f, int factor);

// Splits the Gaussian cell weights at the ball of radius `radius` about the
// origin: boundary cells are cut by sub-cell quadrature with sub^d parts.
struct PieceWeights {
  std::vector<double> inside;
  std::vector<double> outside;
};
PieceWeights piece_weights(const Grid& grid, double t, double radius, int sub = 4);

// |Tf_x|, |T(f_x chi)| and |T(f_x (1 - chi))| on the grid of f, with
// f_x(y) = f(x0 - y) and chi a smooth cutoff equal to 1 on 2B and 0 off 3B.
struct PieceFields {
  std::vector<double> full;
  std::vector<double> near;
  std::vector<double> far;
};
PieceFields piece_fields(const CzOperator& op, const SpectralField& f, std::size_t x0, double radius);

// H, I, J pieces of g_t * |Tf|^k at x0: H over the complement of B, I and J
// over B from the far and near parts.
struct Decomposition {
  double full = 0.0;
  double h = 0.0;
  double i = 0.0;
  double j = 0.0;
};
Decomposition decompose(const PieceFields& fields, const PieceWeights& weights, int power);

}  // namespace osc
