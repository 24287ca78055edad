#include "osc/probe/radius.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "osc/util/format.hpp"
#include "osc/weights/weights.hpp"

namespace osc {

RadiusEstimate estimate_radius(const SpectralField& f, double t) {
  const Grid& g = f.grid();
  const auto& kabs = g.kabs();
  const double dk = g.dk();
  const auto shells = static_cast<std::size_t>(std::ceil(g.k_max() / dk)) + 2;
  std::vector<double> amp(shells, 0.0);
  std::vector<double> kat(shells, 0.0);
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (kabs[k] == 0.0) continue;
    double m2 = 0.0;
    for (int c = 0; c < f.components(); ++c) m2 += std::norm(f.component(c)[k]);
    const auto j = static_cast<std::size_t>(std::lround(kabs[k] / dk));
    const double a = std::sqrt(m2);
    if (a > amp[j]) {
      amp[j] = a;
      kat[j] = kabs[k];
    }
  }
  RadiusEstimate r;
  r.t = t;
  const double top = *std::max_element(amp.begin(), amp.end());
  std::size_t last = 0;
  for (std::size_t j = 0; j < shells; ++j) {
    if (kat[j] > 0.0) last = j;
  }
  std::vector<double> xs;
  std::vector<double> ys;
  const double floor = 1e-14 * top;
  for (std::size_t j = 1; j < shells; ++j) {
    if (kat[j] > 0.0 && amp[j] >= floor && amp[j] > 0.0) {
      xs.push_back(kat[j]);
      ys.push_back(std::log(amp[j]));
    }
  }
  r.shells_used = static_cast<int>(xs.size());
  if (top == 0.0 || xs.size() < 3) {
    r.indeterminate = true;
    return r;
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  r.slope = sxy / sxx;
  r.intercept = my - r.slope * mx;
  r.delta = std::max(0.0, -r.slope);
  double ss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (r.intercept + r.slope * xs[i]);
    ss += e * e;
  }
  r.rms = std::sqrt(ss / n);
  const auto [lo, hi] = std::minmax_element(ys.begin(), ys.end());
  r.relative_residual = *hi > *lo ? r.rms / (*hi - *lo) : 0.0;

  const double k_lo = kat[1] > 0.0 ? kat[1] : xs.front();
  r.resolvable_limit = 14.0 * std::log(10.0) / std::max(kat[last] - k_lo, dk);
  const auto first_top = static_cast<std::size_t>(std::floor(0.9 * last));
  r.saturated = true;
  for (std::size_t j = std::max<std::size_t>(first_top, 1); j <= last; ++j) {
    if (kat[j] > 0.0 && amp[j] >= floor) r.saturated = false;
  }
  return r;
}

double radius_constant(const std::vector<RadiusEstimate>& estimates) {
  double c = std::numeric_limits<double>::infinity();
  for (const auto& e : estimates) {
    if (e.indeterminate || !(e.t > 0.0)) continue;
    c = std::min(c, e.delta / (std::sqrt(e.t) * weights::Phi2(e.t)));
  }
  return std::isfinite(c) ? c : 0.0;
}

bool radius_nondecreasing(const std::vector<RadiusEstimate>& estimates, double slack) {
  for (std::size_t i = 1; i < estimates.size(); ++i) {
    if (estimates[i].delta < (1.0 - slack) * estimates[i - 1].delta) return false;
  }
  return true;
}

std::string radius_csv(const std::vector<RadiusEstimate>& estimates) {
  const double c = radius_constant(estimates);
  std::ostringstream os;
  os << "t,delta,c_fit,saturated\n";
  for (const auto& e : estimates) {
    os << fmt17(e.t) << ',' << fmt17(e.delta) << ',' << fmt17(c) << ',' << (e.saturated ? 1 : 0) << '\n';
  }
  return os.str();
}

nlohmann::json radius_json(const RadiusEstimate& e) {
  return {{"t", e.t},
          {"delta", e.delta},
          {"slope", e.slope},
          {"intercept", e.intercept},
          {"rms", e.rms},
          {"relative_residual", e.relative_residual},
          {"shells_used", e.shells_used},
          {"indeterminate", e.indeterminate},
          {"saturated", e.saturated},
          {"resolvable_limit", e.resolvable_limit}};
}

}  // namespace osc
