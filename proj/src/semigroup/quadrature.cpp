#include "osc/semigroup/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace osc {
namespace {

bool half_or_zero(double e) { return e == 0.0 || e == 0.5; }

// Appends the image of a tau-rule on [0, tau_max] for one half of [0, t].
// left: s = tau^2, the endpoint factor carried by tau is s^{-a};
// right: s = t - tau^2, the endpoint factor is (t-s)^{-b}.
void add_half(QuadratureRule& r, bool left, const std::vector<double>& x, const std::vector<double>& w) {
  const double tau_max = std::sqrt(r.t / 2.0);
  std::vector<double> edges;
  edges.push_back(0.0);
  for (int l = r.levels; l >= 1; --l) edges.push_back(tau_max * std::pow(r.ratio, l));
  edges.push_back(tau_max);
  const double near_exp = left ? r.a : r.b;
  const double far_exp = left ? r.b : r.a;
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    const double lo = edges[p];
    const double hi = edges[p + 1];
    const double half = 0.5 * (hi - lo);
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double tau = lo + half * (x[i] + 1.0);
      const double s = left ? tau * tau : r.t - tau * tau;
      // ds = 2 tau dtau; the near factor tau^{-2 near_exp}.
      const double jac = near_exp == 0.5 ? 2.0 : 2.0 * tau;
      const double other = left ? r.t - s : s;
      const double far = far_exp == 0.5 ? 1.0 / std::sqrt(other) : 1.0;
      r.nodes.push_back(s);
      r.weights.push_back(half * w[i] * jac * far);
    }
  }
}

}  // namespace

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("Gauss-Legendre needs n >= 1");
  static std::mutex mutex;
  static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  // P_n(z) and P_n'(z) by the three-term recurrence.
  auto legendre = [n](double z, double& dp) {
    double p0 = 1.0;
    double p1 = z;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (z * p1 - p0) / (z * z - 1.0);
    return p1;
  };
  std::vector<double> x(n, 0.0);
  std::vector<double> w(n, 2.0);
  for (int i = 0; n > 1 && i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      const double dz = legendre(z, dp) / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    legendre(z, dp);
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  if (n % 2 == 1) x[n / 2] = 0.0;
  cache.emplace(n, std::make_pair(x, w));
  return {x, w};
}

QuadratureRule QuadratureRule::build(double t, double a, double b, int nodes_per_panel, int levels,
                                     double ratio) {
  if (!(t > 0.0)) throw std::invalid_argument("quadrature interval must have t > 0");
  if (!half_or_zero(a) || !half_or_zero(b)) throw std::invalid_argument("exponents must be 0 or 1/2");
  if (levels < 0 || !(ratio > 0.0 && ratio < 1.0)) throw std::invalid_argument("bad grading");
  QuadratureRule r;
  r.t = t;
  r.a = a;
  r.b = b;
  r.nodes_per_panel = nodes_per_panel;
  r.levels = levels;
  r.ratio = ratio;
  const auto [x, w] = gauss_legendre(nodes_per_panel);
  add_half(r, true, x, w);
  add_half(r, false, x, w);
  return r;
}

QuadratureRule QuadratureRule::panels(const std::vector<double>& breakpoints, int nodes_per_panel) {
  if (breakpoints.size() < 2) throw std::invalid_argument("need at least one panel");
  QuadratureRule r;
  r.t = breakpoints.back();
  r.nodes_per_panel = nodes_per_panel;
  const auto [x, w] = gauss_legendre(nodes_per_panel);
  for (std::size_t p = 0; p + 1 < breakpoints.size(); ++p) {
    const double lo = breakpoints[p];
    const double half = 0.5 * (breakpoints[p + 1] - lo);
    for (std::size_t i = 0; i < x.size(); ++i) {
      r.nodes.push_back(lo + half * (x[i] + 1.0));
      r.weights.push_back(half * w[i]);
    }
  }
  return r;
}

double QuadratureRule::integrate(const std::function<double(double)>& h) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * h(nodes[i]);
  return acc;
}

nlohmann::json QuadratureRule::to_json() const {
  return {{"t", t},           {"a", a},         {"b", b},
          {"nodes_per_panel", nodes_per_panel}, {"levels", levels},
          {"ratio", ratio},   {"nodes", nodes}, {"weights", weights}};
}

QuadratureRule QuadratureRule::from_json(const nlohmann::json& j) {
  QuadratureRule r;
  r.t = j.at("t").get<double>();
  r.a = j.at("a").get<double>();
  r.b = j.at("b").get<double>();
  r.nodes_per_panel = j.at("nodes_per_panel").get<int>();
  r.levels = j.at("levels").get<int>();
  r.ratio = j.at("ratio").get<double>();
  r.nodes = j.at("nodes").get<std::vector<double>>();
  r.weights = j.at("weights").get<std::vector<double>>();
  if (r.nodes.size() != r.weights.size()) throw std::invalid_argument("quadrature dump is inconsistent");
  return r;
}

}  // namespace osc
