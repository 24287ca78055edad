#pragma once

#include <json.hpp>

namespace osc::weights {

// |alpha|_max = 1 / (2 C sup_{t<T} t^{1/2} psi2(t)).
double shift_bound(double T, double C);

struct HorizonInput {
  double u0_bmo = 0.0;       // velocity: ||u0||_bmo
  double w0_bmo = 0.0;       // vorticity: ||w0||_bmo
  double w0_lp = 0.0;        // vorticity: ||w0||_{L^p}
  double gamma = 0.0;        // forcing level Gamma(t0)
  double C = 1.0;
  double p = 2.0;
  double t_max = 1e3;
};

struct HorizonResult {
  double T = 0.0;
  bool saturated = false;    // inequality holds on the whole range; T = t_max
  bool below_range = false;  // inequality fails already at 1e-8; T = 1e-8
  double closed_form = 0.0;  // min-form with the Phi1 envelope
  int iterations = 0;
  // Left side minus right side of the defining inequality at T (<= 0).
  double slack = 0.0;

  nlohmann::json to_json() const;
};

inline constexpr double kHorizonLower = 1e-8;

// Largest T in [1e-8, t_max] with
//   T^{1/2} Psi2(T) C (||u0|| + T Psi1(T) Gamma) <= 1.
HorizonResult horizon_tstar(const HorizonInput& in);
double tstar_excess(const HorizonInput& in, double T);

// p > 1: T Psi1w(T) C X <= 1; p = 1: T^{1/2} Psi2w(T) C X <= 1, with
// X = ||w0||_bmo + ||w0||_{L^p}. Needs 1 <= p < 3.
HorizonResult horizon_tomega(const HorizonInput& in);
double tomega_excess(const HorizonInput& in, double T);

}  // namespace osc::weights
