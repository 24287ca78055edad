#include "osc/iteration/vorticity.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "internal.hpp"
#include "osc/semigroup/operators.hpp"
#include "osc/spaces/norm_report.hpp"
#include "osc/spaces/norms.hpp"
#include "osc/spectral/transform.hpp"
#include "osc/util/parallel.hpp"
#include "osc/weights/weights.hpp"

namespace osc {

namespace {
constexpr int kPairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
}

ComplexPair vorticity_sources(const SpectralField& w, const SpectralField& z) {
  const Grid& g = w.grid();
  if (g.dim() != 3) throw std::invalid_argument("vorticity sources need d = 3");
  if (w.max_abs() == 0.0 && z.max_abs() == 0.0) return ComplexPair(g, 3);
  const PointField pw = inverse(dealias(w));
  const PointField pz = inverse(dealias(z));
  const PointField pu = inverse(dealias(biot_savart(w)));
  const PointField pv = inverse(dealias(biot_savart(z)));
  // N_W = div(T_W), N_Z = div(T_Z) with antisymmetric
  //   T_W = UW - WU - VZ + ZV,  T_Z = UZ - ZU + VW - WV  ((ab)_ij = a_i b_j).
  PointField tw(g, 3);
  PointField tz(g, 3);
  for (int q = 0; q < 3; ++q) {
    const int i = kPairs[q][0];
    const int j = kPairs[q][1];
    auto ui = pu.component(i), uj = pu.component(j);
    auto vi = pv.component(i), vj = pv.component(j);
    auto wi = pw.component(i), wj = pw.component(j);
    auto zi = pz.component(i), zj = pz.component(j);
    auto a = tw.component(q);
    auto b = tz.component(q);
    for (std::size_t x = 0; x < g.size(); ++x) {
      a[x] = ui[x] * wj[x] - wi[x] * uj[x] - vi[x] * zj[x] + zi[x] * vj[x];
      b[x] = ui[x] * zj[x] - zi[x] * uj[x] + vi[x] * wj[x] - wi[x] * vj[x];
    }
  }
  SpectralField sw = forward(tw);
  SpectralField sz = forward(tz);
  dealias_inplace(sw);
  dealias_inplace(sz);
  const auto& t = g.tables();
  const cplx I(0.0, 1.0);
  ComplexPair out(g, 3);
  for (int q = 0; q < 3; ++q) {
    const int i = kPairs[q][0];
    const int j = kPairs[q][1];
    auto a = sw.component(q);
    auto b = sz.component(q);
    // T_ij = s_q, T_ji = -s_q.
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (t.nyquist[k]) continue;
      out.re.component(i)[k] += I * t.k[j][k] * a[k];
      out.re.component(j)[k] -= I * t.k[i][k] * a[k];
      out.im.component(i)[k] += I * t.k[j][k] * b[k];
      out.im.component(j)[k] -= I * t.k[i][k] * b[k];
    }
  }
  return out;
}

double curl_consistency(const IterationState& velocity, const IterationState& vorticity) {
  if (velocity.mode != Mode::velocity || vorticity.mode != Mode::vorticity) {
    throw std::invalid_argument("curl consistency needs a velocity state and a vorticity state");
  }
  if (velocity.times != vorticity.times) throw std::invalid_argument("states use different time grids");
  double scale = 0.0;
  double gap = 0.0;
  for (std::size_t m = 0; m < velocity.times.size(); ++m) {
    for (int part = 0; part < 2; ++part) {
      const SpectralField& u = part == 0 ? velocity.re[m] : velocity.im[m];
      const SpectralField& w = part == 0 ? vorticity.re[m] : vorticity.im[m];
      gap = std::max(gap, linf_norm(curl(u) - w));
      scale = std::max(scale, linf_norm(w));
    }
  }
  return scale > 0.0 ? gap / scale : gap;
}

namespace detail {

Monitors vorticity_monitors(IterationState& s, double p) {
  const std::size_t count = s.times.size();
  s.vel_re.clear();
  s.vel_im.clear();
  for (std::size_t m = 0; m < count; ++m) {
    s.vel_re.push_back(biot_savart(s.re[m]));
    s.vel_im.push_back(biot_savart(s.im[m]));
  }
  std::vector<std::optional<NormReport>> rw(count);
  std::vector<std::optional<NormReport>> rz(count);
  std::vector<double> lu(count), lv(count);
  parallel_for(2 * count, [&](std::size_t i) {
    const std::size_t m = i / 2;
    if (i % 2 == 0) {
      rw[m] = make_norm_report(s.re[m], s.times[m], {p});
      lu[m] = linf_norm(s.vel_re[m]);
    } else {
      rz[m] = make_norm_report(s.im[m], s.times[m], {p});
      lv[m] = linf_norm(s.vel_im[m]);
    }
  });
  double sw[4] = {0, 0, 0, 0};
  double sz[4] = {0, 0, 0, 0};
  double qu = 0.0;
  double qv = 0.0;
  Monitors mon;
  for (std::size_t m = 0; m < count; ++m) {
    const double t = s.times[m];
    const double w1 = t > 0.0 ? weights::phi1(t) : 0.0;
    const double a[4] = {rw[m]->phi1_linf, rw[m]->b0_inf_inf, rw[m]->bmo_local, rw[m]->lp.front().second};
    const double b[4] = {rz[m]->phi1_linf, rz[m]->b0_inf_inf, rz[m]->bmo_local, rz[m]->lp.front().second};
    for (int q = 0; q < 4; ++q) {
      sw[q] = std::max(sw[q], a[q]);
      sz[q] = std::max(sz[q], b[q]);
    }
    qu = std::max(qu, w1 * lu[m]);
    qv = std::max(qv, w1 * lv[m]);
    mon.im_linf = std::max(mon.im_linf, rz[m]->linf);
    const double dw = rw[m]->linf + a[3];
    const double dz = rz[m]->linf + b[3];
    if (dw > 0.0) mon.velocity_ratio = std::max(mon.velocity_ratio, lu[m] / dw);
    if (dz > 0.0) mon.velocity_ratio = std::max(mon.velocity_ratio, lv[m] / dz);
  }
  mon.linf = sw[0] + sz[0];
  mon.b0 = sw[1] + sz[1];
  mon.bmo = sw[2] + sz[2];
  mon.fourth = sw[3] + sz[3];
  mon.q = qu + qv;
  mon.max = std::max({mon.linf, mon.b0, mon.bmo, mon.fourth, mon.q});
  return mon;
}

}  // namespace detail
}  // namespace osc
