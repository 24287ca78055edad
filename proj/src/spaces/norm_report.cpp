#include "osc/spaces/norm_report.hpp"

#include <cmath>
#include <sstream>

#include "osc/spaces/bmo.hpp"
#include "osc/spaces/littlewood_paley.hpp"
#include "osc/spaces/norms.hpp"
#include "osc/spectral/transform.hpp"
#include "osc/weights/weights.hpp"

namespace osc {

NormReport make_norm_report(const SpectralField& f, double t, const std::vector<double>& p_list) {
  NormReport r;
  r.t = t;
  const PointField pts = inverse(f);
  const auto mag = magnitude(pts);
  for (double p : p_list) r.lp.emplace_back(p, lp_norm_of_magnitude(mag, p, f.grid().cell_volume()));
  r.linf = lp_norm_of_magnitude(mag, INFINITY, 1.0);
  const BmoParts parts = bmo_parts(pts);
  r.bmo_local = parts.oscillation_small + parts.mean_unit;
  r.bmo_global = parts.oscillation_all;

  // Inhomogeneous blocks j >= 1 coincide with the homogeneous ones, so one
  // pass over the homogeneous range plus the low block covers all three norms.
  const auto hom = lp_block_norms(f, INFINITY, true, &r.mean_excluded);
  std::vector<BlockNorm> inhom;
  SpectralField low(f.grid(), f.components(), f.is_real());
  for (int c = 0; c < f.components(); ++c) {
    auto src = f.component(c);
    auto dst = low.component(c);
    const auto& kabs = f.grid().kabs();
    for (std::size_t k = 0; k < src.size(); ++k) dst[k] = lp_cutoff(kabs[k]) * src[k];
  }
  inhom.push_back({0, true, linf_norm(low)});
  for (const auto& b : hom) {
    if (b.j >= 1) inhom.push_back(b);
  }
  r.b0_inf_inf = besov_from_blocks(inhom, 0.0, INFINITY);
  r.b1_inf_1_hom = besov_from_blocks(hom, 1.0, 1.0);
  r.b0_inf_inf_hom = besov_from_blocks(hom, 0.0, INFINITY);
  r.phi1_linf = t > 0.0 ? weights::phi1(t) * r.linf : 0.0;
  r.sqrt_t_b1 = std::sqrt(t) * r.b1_inf_1_hom;
  return r;
}

std::string NormReport::csv_header() const {
  std::ostringstream os;
  os << "t";
  for (const auto& [p, v] : lp) os << ",L" << fmt17(p);
  os << ",linf,bmo,BMO,B0inf,hB1inf1,hB0inf,phi1_linf,sqrt_t_B1,mean_excluded";
  return os.str();
}

std::string NormReport::csv_row() const {
  std::ostringstream os;
  os << fmt17(t);
  for (const auto& [p, v] : lp) os << ',' << fmt17(v);
  for (double v : {linf, bmo_local, bmo_global, b0_inf_inf, b1_inf_1_hom, b0_inf_inf_hom, phi1_linf,
                   sqrt_t_b1}) {
    os << ',' << fmt17(v);
  }
  os << ',' << (mean_excluded ? 1 : 0);
  return os.str();
}

nlohmann::json NormReport::to_json() const {
  nlohmann::json j;
  j["t"] = t;
  auto& l = j["lp"] = nlohmann::json::array();
  for (const auto& [p, v] : lp) l.push_back({{"p", p}, {"value", v}});
  j["linf"] = linf;
  j["bmo"] = bmo_local;
  j["BMO"] = bmo_global;
  j["B0_inf_inf"] = b0_inf_inf;
  j["hom_B1_inf_1"] = b1_inf_1_hom;
  j["hom_B0_inf_inf"] = b0_inf_inf_hom;
  j["phi1_linf"] = phi1_linf;
  j["sqrt_t_B1"] = sqrt_t_b1;
  j["mean_excluded"] = mean_excluded;
  return j;
}

}  // namespace osc
