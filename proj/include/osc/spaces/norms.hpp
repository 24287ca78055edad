#pragma once

#include <span>

#include "osc/spectral/field.hpp"

namespace osc {

// Vector fields are measured through the pointwise Euclidean magnitude.
// L^p uses grid quadrature (sum |f|^p h^d)^{1/p}; p = infinity takes the max.
double lp_norm(const SpectralField& f, double p);
double linf_norm(const SpectralField& f);

double lp_norm(const PointField& f, double p);
double linf_norm(const PointField& f);

// Same reductions on precomputed magnitudes.
double lp_norm_of_magnitude(std::span<const double> mag, double p, double cell_volume);

}  // namespace osc
