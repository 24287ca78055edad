#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "osc/spectral/field.hpp"

namespace osc {

struct ConvexityCertificate {
  bool zero_at_origin = false;
  bool increasing = false;
  bool convex = false;
  // Most negative normalized slope increment seen on the sample.
  double worst_defect = 0.0;
  bool ok() const { return zero_at_origin && increasing && convex; }
};

struct OrliczSpec {
  enum class Kind { phi_star, psi_star, psi_k, custom };

  Kind kind = Kind::custom;
  std::string name;
  double k = 1.0;
  std::function<double(double)> profile;
  // psi_k only: below this point the profile is replaced by its tangent line
  // from the origin (the convex minorant); 0 when no replacement is needed.
  double tangent_point = 0.0;
  ConvexityCertificate certificate;

  double operator()(double x) const { return profile(x); }

  // x ln(e + x)
  static OrliczSpec phi_star();
  // e^x - 1
  static OrliczSpec psi_star();
  // e^{x^{1/k}} - 1, convexified near the origin for k > 1.
  static OrliczSpec psi_k(double k);
  // Throws std::invalid_argument when the certificate fails.
  static OrliczSpec custom(std::string name, std::function<double(double)> profile);
};

// Sampled check on a log-spaced grid: phi(0) = 0, increasing, and divided
// differences nondecreasing to relative tolerance tol.
ConvexityCertificate certify_profile(const std::function<double(double)>& phi, double x_lo = 1e-6,
                                     double x_hi = 50.0, int samples = 400, double tol = 1e-9);

// Luxemburg norm inf{s > 0 : sum phi(|f|/s) dmu <= 1} by bisection in log s to
// relative tolerance 1e-8. mask selects the cells of the measure (empty span
// means the whole grid). Identically zero data returns 0.
double luxemburg_norm(std::span<const double> magnitude, std::span<const std::uint8_t> mask,
                      double cell_volume, const OrliczSpec& spec);

// Integral of phi(|f|/s) over the masked cells.
double orlicz_modular(std::span<const double> magnitude, std::span<const std::uint8_t> mask,
                      double cell_volume, const OrliczSpec& spec, double s);

// Cube domain in cells (periodic wrap); side 0 means the full torus.
struct CubeDomain {
  int origin[3] = {0, 0, 0};
  int side = 0;
};
std::vector<std::uint8_t> cube_mask(const Grid& grid, const CubeDomain& cube);

double orlicz_norm(const SpectralField& f, const OrliczSpec& spec, const CubeDomain& domain = {});

struct Conjugate {
  std::vector<double> y;
  std::vector<double> value;
  std::vector<std::uint8_t> infinite;
  std::vector<double> argmax;
};

// psi(y) = sup_{x >= 0} (x y - phi(x)) by a geometric scan over x in
// [1e-12, 1e12] refined with golden-section search. A supremum still
// increasing at the end of the scan is flagged infinite.
Conjugate legendre_fenchel(const std::function<double(double)>& phi, std::span<const double> y);

}  // namespace osc
