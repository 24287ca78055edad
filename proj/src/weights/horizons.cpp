#include "osc/weights/horizons.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "osc/weights/weights.hpp"

namespace osc::weights {
namespace {

// excess(T) = lhs(T) - 1 is increasing in T; bisection in ln T.
HorizonResult solve(const std::function<double(double)>& excess, double t_max) {
  HorizonResult r;
  double lo = kHorizonLower;
  double hi = t_max;
  const double e_hi = excess(hi);
  if (e_hi <= 0.0) {
    r.T = hi;
    r.saturated = true;
    r.slack = e_hi;
    return r;
  }
  const double e_lo = excess(lo);
  if (e_lo > 0.0) {
    r.T = lo;
    r.below_range = true;
    r.slack = e_lo;
    return r;
  }
  int it = 0;
  for (; it < 200 && hi / lo - 1.0 > 1e-13; ++it) {
    const double mid = std::sqrt(lo * hi);
    (excess(mid) <= 0.0 ? lo : hi) = mid;
  }
  r.T = lo;
  r.iterations = it;
  r.slack = excess(lo);
  return r;
}

void check_positive(double v, const char* what) {
  if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be >= 0");
}

}  // namespace

double shift_bound(double T, double C) {
  if (!(T > 0.0) || !(C > 0.0)) throw std::invalid_argument("shift bound needs T > 0 and C > 0");
  // Scan below T; t^{1/2} psi2(t) = int_0^t r^{-1/2} ln(e + 1/r) dr is
  // increasing, so the scan ends at its supremum.
  double sup = 0.0;
  constexpr int kSamples = 64;
  for (int i = 0; i <= kSamples; ++i) {
    const double t = T * std::pow(1e-6, 1.0 - double(i) / kSamples);
    sup = std::max(sup, std::sqrt(t) * psi2(t));
  }
  return 1.0 / (2.0 * C * sup);
}

double tstar_excess(const HorizonInput& in, double T) {
  return std::sqrt(T) * Psi2(T) * in.C * (in.u0_bmo + T * Psi1(T) * in.gamma) - 1.0;
}

HorizonResult horizon_tstar(const HorizonInput& in) {
  check_positive(in.u0_bmo, "data norm");
  check_positive(in.gamma, "forcing level");
  if (!(in.C > 0.0)) throw std::invalid_argument("calibration constant must be > 0");
  HorizonResult r = solve([&](double T) { return tstar_excess(in, T); }, in.t_max);
  const double u = in.u0_bmo;
  if (u > 0.0) {
    r.closed_form = std::min(1.0 / (in.C * u * u * Phi1(u)), u * Phi1(u) / (in.C * Phi1(in.gamma)));
  } else {
    r.closed_form = in.t_max;
  }
  return r;
}

double tomega_excess(const HorizonInput& in, double T) {
  const double x = in.w0_bmo + in.w0_lp;
  if (in.p > 1.0) return T * Psi1_omega(T) * in.C * x - 1.0;
  return std::sqrt(T) * Psi2_omega(T) * in.C * x - 1.0;
}

HorizonResult horizon_tomega(const HorizonInput& in) {
  if (!(in.p >= 1.0 && in.p < 3.0)) throw std::invalid_argument("vorticity exponent needs 1 <= p < 3");
  check_positive(in.w0_bmo, "bmo norm");
  check_positive(in.w0_lp, "L^p norm");
  check_positive(in.gamma, "forcing level");
  if (!(in.C > 0.0)) throw std::invalid_argument("calibration constant must be > 0");
  HorizonResult r = solve([&](double T) { return tomega_excess(in, T); }, in.t_max);
  const double x = in.w0_bmo + in.w0_lp;
  if (x > 0.0) {
    const double xp = in.p > 1.0 ? x * Phi1(x) : std::pow(x * Phi1(x), 2);
    r.closed_form = std::min(1.0 / (in.C * xp), xp / (in.C * Phi1(in.gamma)));
  } else {
    r.closed_form = in.t_max;
  }
  return r;
}

nlohmann::json HorizonResult::to_json() const {
  return {{"T", T},
          {"saturated", saturated},
          {"below_range", below_range},
          {"closed_form", closed_form},
          {"iterations", iterations},
          {"slack", slack}};
}

}  // namespace osc::weights
