#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "osc/spectral/field.hpp"

namespace osc {

struct RadiusEstimate {
  double t = 0.0;
  double delta = 0.0;      // fitted decay rate, clipped at 0
  double slope = 0.0;      // d log a / d|k|
  double intercept = 0.0;
  double rms = 0.0;        // rms log residual
  // rms residual over the log-amplitude range spanned by the used shells.
  double relative_residual = 0.0;
  int shells_used = 0;
  bool indeterminate = false;  // fewer than three shells above the floor
  // The top tenth of the shells sits at the round-off floor, so faster decay
  // could not be told apart from the recorded value.
  bool saturated = false;
  double resolvable_limit = 0.0;  // 14 ln 10 / (k_top - k_bottom)
};

// Shell maxima a_j = max_{|k| in shell j} |u(k)| (shells of width dk,
// mean mode excluded), fitted by log a_j = -delta |k_j| + b over the shells
// with a_j >= 1e-14 max a, where k_j is the wavenumber attaining the maximum.
RadiusEstimate estimate_radius(const SpectralField& f, double t = 0.0);

// Largest c with delta(t) >= c t^{1/2} Phi2(t) at every estimate (t > 0).
double radius_constant(const std::vector<RadiusEstimate>& estimates);
// delta(t_{i+1}) >= (1 - slack) delta(t_i) along the list.
bool radius_nondecreasing(const std::vector<RadiusEstimate>& estimates, double slack = 0.15);

// Columns t, delta, c_fit, saturated.
std::string radius_csv(const std::vector<RadiusEstimate>& estimates);
nlohmann::json radius_json(const RadiusEstimate& e);

}  // namespace osc
