#pragma once

#include <functional>
#include <json.hpp>
#include <utility>
#include <vector>

namespace osc {

// Gauss-Legendre nodes and weights on [-1, 1] (Newton iteration on P_n).
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n);

// Rule for integral_0^t s^{-a} (t-s)^{-b} h(s) ds with a, b in {0, 1/2}.
// The interval is split at t/2; the left half uses s = tau^2 and the right
// half s = t - tau^2, which turns each square-root singularity into a smooth
// integrand in tau. Each half is split into geometrically graded panels
// toward tau = 0 (levels panels of ratio `ratio`, then the outer panel) with
// nodes_per_panel Gauss-Legendre points each. The weights include the
// singular factor and the Jacobian.
struct QuadratureRule {
  double t = 0.0;
  double a = 0.0;
  double b = 0.0;
  int nodes_per_panel = 64;
  int levels = 0;
  double ratio = 0.5;
  std::vector<double> nodes;
  std::vector<double> weights;

  static QuadratureRule build(double t, double a, double b, int nodes_per_panel = 64, int levels = 0,
                              double ratio = 0.5);
  // Panels aligned to given breakpoints 0 = t_0 < ... < t_M = t, plain
  // Gauss-Legendre per panel (a = b = 0).
  static QuadratureRule panels(const std::vector<double>& breakpoints, int nodes_per_panel);

  double integrate(const std::function<double(double)>& h) const;

  nlohmann::json to_json() const;
  static QuadratureRule from_json(const nlohmann::json& j);
};

}  // namespace osc
