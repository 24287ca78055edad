#pragma once

#include <functional>
#include <vector>

#include "osc/semigroup/quadrature.hpp"
#include "osc/spectral/field.hpp"

namespace osc {

using SourceProvider = std::function<SpectralField(double)>;

// sum_i w_i e^{(t - s_i) Delta} source(s_i): the rule's weights carry any
// singular factor. Node evaluations run in parallel; the reduction is in node
// order so the result is deterministic.
SpectralField duhamel_integrate(const SourceProvider& source, double t, const QuadratureRule& rule);

// Piecewise-linear interpolation of snapshots in time (clamped at the ends).
// The provider refers to fields and times; both must outlive it.
SourceProvider interpolate_snapshots(const std::vector<SpectralField>& fields,
                                     const std::vector<double>& times);

// Exponential integrator on a snapshot grid: for sources linear in time
// between consecutive snapshots, returns
//   I_m = integral_0^{t_m} e^{(t_m - s) Delta} g(s) ds
// exactly per mode, for every m (I_0 = 0).
std::vector<SpectralField> duhamel_snapshots(const std::vector<SpectralField>& sources,
                                             const std::vector<double>& times);

// Per-interval weights of the integrator, shared across fields on one grid.
struct ExpStepWeights {
  std::vector<std::vector<double>> decay;  // e^{-|k|^2 h}
  std::vector<std::vector<double>> wa;     // weight on the left source
  std::vector<std::vector<double>> wb;     // weight on the right source
};
ExpStepWeights exp_step_weights(const Grid& grid, const std::vector<double>& times);
std::vector<SpectralField> duhamel_snapshots(const std::vector<SpectralField>& sources,
                                             const ExpStepWeights& weights);

// phi_1(z) = (1 - e^{-z})/z and phi_2(z) = (z - 1 + e^{-z})/z^2, with series
// near 0.
double expint_phi1(double z);
double expint_phi2(double z);

}  // namespace osc
