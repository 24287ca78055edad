#pragma once

#include <json.hpp>
#include <string>
#include <utility>
#include <vector>

#include "osc/spectral/field.hpp"
#include "osc/util/format.hpp"

namespace osc {

struct NormReport {
  double t = 0.0;
  std::vector<std::pair<double, double>> lp;  // (p, ||f||_p)
  double linf = 0.0;
  double bmo_local = 0.0;   // bmo
  double bmo_global = 0.0;  // BMO
  double b0_inf_inf = 0.0;       // inhomogeneous B^0_{inf,inf}
  double b1_inf_1_hom = 0.0;     // homogeneous B^1_{inf,1}
  double b0_inf_inf_hom = 0.0;   // homogeneous B^0_{inf,inf}
  double phi1_linf = 0.0;        // phi_1(t) ||f||_inf
  double sqrt_t_b1 = 0.0;        // t^{1/2} ||f||_{hom B^1_{inf,1}}
  bool mean_excluded = false;

  // Column order: t, L^p columns in request order, linf, bmo, BMO, B0inf,
  // hB1inf1, hB0inf, phi1_linf, sqrt_t_B1, mean_excluded.
  std::string csv_header() const;
  std::string csv_row() const;
  nlohmann::json to_json() const;
};

NormReport make_norm_report(const SpectralField& f, double t, const std::vector<double>& p_list = {2.0});

}  // namespace osc
