#pragma once

#include <array>
#include <json.hpp>
#include <string>
#include <string_view>
#include <vector>

namespace osc::weights {

// phi1(t) = 1 / ln(e + 1/t)
double phi1(double t);
// phi2(t) = t^{1/2}
double phi2(double t);

// psi1(t) = t^{-1} int_0^t ln(e + 1/(t-s)) ds
double psi1(double t);
// psi2(t) = t^{-1/2} int_0^t (t-s)^{-1/2} ln(e + 1/(t-s)) ds
double psi2(double t);
// psi3 = phi1 psi1
double psi3(double t);
// psi4(t) = t^{-1/2} phi1(t) int_0^t (t-s)^{-1/2} phi1(s)^{-2} ds
double psi4(double t);
// psi5(t) = int_0^t s^{-1/2} (t-s)^{-1/2} phi1(s)^{-1} ds
double psi5(double t);
// Psi1 = max{1, psi1, psi3}
double Psi1(double t);
// Psi2 = max{psi2, psi4, psi5, phi1 psi2, psi4 / phi1}
double Psi2(double t);

// Vorticity-side weights:
// Psi1w(t) = max{1, t^{-1} int_0^t phi1(t-s)^{-1} (phi1(s)^{-1} + phi1(s)^{-2}) ds}
double Psi1_omega(double t);
// Psi2w(t) = max{1, t^{-1/2} int_0^t (t-s)^{-1/2} phi1(s)^{-1} ds}
double Psi2_omega(double t);

// Envelopes: Phi1(r) = max{1, ln(e + r)}, Phi2(t) = min{1, 1/psi2(t)}.
double Phi1(double r);
double Phi2(double t);

// Column names in table order.
inline constexpr std::array<std::string_view, 9> kColumns{
    "phi1", "phi2", "psi1", "psi2", "psi3", "psi4", "psi5", "Psi1", "Psi2"};

// Throws std::invalid_argument for t <= 0 or an unknown name.
double weight(std::string_view name, double t);

// Quadrature settings used by the psi integrals (graded Gauss-Legendre).
struct QuadratureSettings {
  int nodes_per_panel = 16;
  int levels = 30;
  double ratio = 0.5;
};
const QuadratureSettings& quadrature_settings();

// Precomputed weights on a geometric grid with cubic Lagrange interpolation
// in (ln t, ln w). Off-range queries fall back to direct evaluation.
class WeightTable {
 public:
  explicit WeightTable(double t_max = 10.0, double t_min = 1e-6, int points = 256);

  const std::vector<double>& times() const { return t_; }
  const std::vector<double>& column(std::string_view name) const;
  double value(std::string_view name, double t) const;
  double t_min() const { return t_.front(); }
  double t_max() const { return t_.back(); }

  // t followed by the nine columns, 17 significant digits.
  std::string to_csv() const;
  nlohmann::json metadata() const;

 private:
  std::vector<double> t_;
  std::array<std::vector<double>, 9> cols_;
};

}  // namespace osc::weights
