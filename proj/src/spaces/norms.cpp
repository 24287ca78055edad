#include "osc/spaces/norms.hpp"

#include <cmath>
#include <stdexcept>

#include "osc/simd/kernels.hpp"
#include "osc/spectral/transform.hpp"

namespace osc {

double lp_norm_of_magnitude(std::span<const double> mag, double p, double cell_volume) {
  if (!(p >= 1.0)) throw std::invalid_argument("L^p exponent must be >= 1");
  if (std::isinf(p)) return simd::max_abs(mag);
  if (p == 2.0) return std::sqrt(simd::sum_squares(mag) * cell_volume);
  double acc = 0.0;
  if (p == 1.0) {
    for (double v : mag) acc += std::abs(v);
    return acc * cell_volume;
  }
  // Scale by the max to keep large exponents in range.
  const double m = simd::max_abs(mag);
  if (m == 0.0) return 0.0;
  for (double v : mag) acc += std::pow(std::abs(v) / m, p);
  return m * std::pow(acc * cell_volume, 1.0 / p);
}

double lp_norm(const PointField& f, double p) {
  if (f.components == 1) return lp_norm_of_magnitude(f.component(0), p, f.grid.cell_volume());
  const auto mag = magnitude(f);
  return lp_norm_of_magnitude(mag, p, f.grid.cell_volume());
}

double linf_norm(const PointField& f) { return lp_norm(f, INFINITY); }

double lp_norm(const SpectralField& f, double p) { return lp_norm(inverse(f), p); }

double linf_norm(const SpectralField& f) { return linf_norm(inverse(f)); }

}  // namespace osc
