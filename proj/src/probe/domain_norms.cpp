#include "osc/probe/domain_norms.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "osc/probe/directions.hpp"
#include "osc/spaces/bmo.hpp"
#include "osc/spaces/norms.hpp"
#include "osc/spectral/transform.hpp"
#include "osc/util/format.hpp"
#include "osc/util/log.hpp"
#include "osc/util/parallel.hpp"
#include "osc/weights/weights.hpp"

namespace osc {

std::vector<DomainNormRow> probe_domain_norms(const ComplexPair& pair, double t, const std::vector<double>& radii,
                                              const std::vector<std::array<double, 3>>& directions) {
  const Grid& g = pair.re.grid();
  const int d = g.dim();
  SpectralField c = pair.re;
  c.set_real(false);
  const cplx I(0.0, 1.0);
  for (std::size_t i = 0; i < c.data().size(); ++i) c.data()[i] += I * pair.im.data()[i];

  std::vector<DomainNormRow> rows(radii.size() * directions.size());
  parallel_for(rows.size(), [&](std::size_t i) {
    const std::size_t ri = i / directions.size();
    const std::size_t di = i % directions.size();
    DomainNormRow& row = rows[i];
    row.t = t;
    row.radius = radii[ri];
    row.direction = static_cast<int>(di);
    std::array<double, 3> y{};
    for (int a = 0; a < d; ++a) y[a] = radii[ri] * directions[di][a];
    const ShiftEvaluation e = evaluate_complex_shift(c, std::span<const double>(y.data(), d));
    if (e.overflow) {
      row.overflow = true;
      const double inf = std::numeric_limits<double>::infinity();
      row.bmo_re = row.bmo_im = row.linf_re = row.linf_im = inf;
      return;
    }
    PointField re(g, e.values.components);
    PointField im(g, e.values.components);
    for (std::size_t x = 0; x < e.values.values.size(); ++x) {
      re.values[x] = e.values.values[x].real();
      im.values[x] = e.values.values[x].imag();
    }
    row.bmo_re = bmo_norm(re, true);
    row.bmo_im = bmo_norm(im, true);
    row.linf_re = linf_norm(re);
    row.linf_im = linf_norm(im);
  });
  for (const auto& r : rows) {
    if (r.overflow) log().warn("complex shift overflow at |y| = {} (direction {}); excluded", r.radius, r.direction);
  }
  return rows;
}

std::vector<DomainNormRow> probe_domain_norms(const ComplexPair& pair, double t, const std::vector<double>& radii) {
  return probe_domain_norms(pair, t, radii, probe_directions(pair.re.grid().dim()));
}

double domain_sup_weighted_linf(const std::vector<DomainNormRow>& rows) {
  double sup = 0.0;
  for (const auto& r : rows) {
    if (r.overflow || !(r.t > 0.0)) continue;
    sup = std::max(sup, weights::phi1(r.t) * std::max(r.linf_re, r.linf_im));
  }
  return sup;
}

std::string domain_norms_csv(const std::vector<DomainNormRow>& rows) {
  std::ostringstream os;
  os << "t,radius,direction,bmo_re,bmo_im,linf_re,linf_im\n";
  for (const auto& r : rows) {
    os << fmt17(r.t) << ',' << fmt17(r.radius) << ',' << r.direction << ',' << fmt17(r.bmo_re) << ','
       << fmt17(r.bmo_im) << ',' << fmt17(r.linf_re) << ',' << fmt17(r.linf_im) << '\n';
  }
  return os.str();
}

}  // namespace osc
