#include <doctest.h>

#include <sstream>

#include "osc/probe/directions.hpp"
#include "osc/probe/domain_norms.hpp"
#include "osc/probe/radius.hpp"
#include "osc/spaces/bmo.hpp"
#include "osc/spaces/norms.hpp"
#include "osc/verify/corpus.hpp"
#include "osc/weights/weights.hpp"
#include "support.hpp"

using namespace osc;
using namespace osc::test;

namespace {

SpectralField exp_decay(const Grid& g, double delta) {
  SpectralField f(g, 1);
  for (std::size_t i = 1; i < g.size(); ++i) f.component(0)[i] = std::exp(-delta * g.kabs()[i]);
  return f;
}

}  // namespace

TEST_SUITE("probe") {

TEST_CASE("synthetic exponential decay") {
  for (double delta : {0.25, 0.5, 1.0}) {
    CAPTURE(delta);
    const RadiusEstimate e = estimate_radius(exp_decay(grid2(64), delta));
    CHECK_FALSE(e.indeterminate);
    CHECK(e.delta == doctest::Approx(delta).epsilon(0.04));
    CHECK(e.shells_used >= 3);
  }
  const RadiusEstimate half = estimate_radius(exp_decay(grid2(64), 0.5));
  CHECK(std::abs(half.delta - 0.5) <= 0.02);
}

TEST_CASE("mean-only field is indeterminate") {
  SpectralField f(grid2(32), 1);
  f.component(0)[0] = 1.0;
  const RadiusEstimate e = estimate_radius(f);
  CHECK(e.indeterminate);
  CHECK(e.delta == 0.0);
}

TEST_CASE("radius is invariant under translation and scaling") {
  const Grid g = grid2(64);
  const SpectralField f = heat_apply(white_band(g, 1, 30, 4), 0.02);
  SpectralField shifted = f;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double phase = 0.37 * g.k(0)[i] - 1.1 * g.k(1)[i];
    shifted.component(0)[i] *= std::exp(cplx(0.0, phase));
  }
  const RadiusEstimate a = estimate_radius(f);
  const RadiusEstimate b = estimate_radius(shifted);
  const RadiusEstimate c = estimate_radius(-17.0 * f);
  CHECK(std::abs(a.slope - b.slope) <= 1e-10 * std::abs(a.slope));
  CHECK(std::abs(a.slope - c.slope) <= 1e-10 * std::abs(a.slope));
}

TEST_CASE("heat flow grows the radius like sqrt(t)") {
  const Grid g = grid2(128);
  const SpectralField w = white_band(g, 1, 60, 8);
  std::vector<RadiusEstimate> est;
  for (double t : {0.01, 0.04, 0.16}) est.push_back(estimate_radius(heat_apply(w, t), t));
  for (std::size_t i = 0; i + 1 < est.size(); ++i) {
    const double ratio = est[i + 1].delta / est[i].delta;
    CHECK(ratio == doctest::Approx(2.0).epsilon(0.15));
  }
  CHECK(radius_nondecreasing(est, 0.0));
  const double c = radius_constant(est);
  CHECK(c > 0.0);
  for (const auto& e : est) CHECK(e.delta >= c * std::sqrt(e.t) * weights::Phi2(e.t) * (1.0 - 1e-12));
  std::istringstream csv(radius_csv(est));
  std::string header;
  std::getline(csv, header);
  CHECK(header == "t,delta,c_fit,saturated");
  CHECK(radius_json(est[0]).at("delta").get<double>() == est[0].delta);
}

TEST_CASE("nondecreasing test") {
  std::vector<RadiusEstimate> est(3);
  est[0].delta = 1.0;
  est[1].delta = 0.9;
  est[2].delta = 1.2;
  CHECK(radius_nondecreasing(est, 0.15));
  CHECK_FALSE(radius_nondecreasing(est, 0.05));
}

TEST_CASE("probe directions") {
  const auto d2 = probe_directions(2);
  CHECK(d2.size() == 12);
  CHECK(d2[0][0] == 1.0);
  CHECK(d2[1][0] == -1.0);
  for (const auto& v : d2) CHECK(std::hypot(v[0], v[1]) == doctest::Approx(1.0));
  CHECK(probe_directions(3).size() == 14);
  CHECK(probe_directions(3, 5) == probe_directions(3, 5));
}

TEST_CASE("domain norms at zero shift") {
  const Grid g = grid2(32);
  const ComplexPair pair(random_band(g, 2, 5, 1), random_band(g, 2, 5, 2));
  const auto rows = probe_domain_norms(pair, 0.1, {0.0});
  REQUIRE(!rows.empty());
  for (const auto& r : rows) {
    CHECK(r.linf_re == doctest::Approx(linf_norm(pair.re)).epsilon(1e-12));
    CHECK(r.linf_im == doctest::Approx(linf_norm(pair.im)).epsilon(1e-12));
    CHECK(r.bmo_re == doctest::Approx(bmo_norm(pair.re, true)).epsilon(1e-12));
    CHECK_FALSE(r.overflow);
  }
}

TEST_CASE("domain norms of a single mode") {
  // cos x + i sin x = e^{ix}; at x - i r this is e^{ix} e^{r}.
  const Grid g = grid2(32);
  const ComplexPair pair(cos_mode(g, 1, {1, 0, 0}), sin_mode(g, 1, {1, 0, 0}));
  const double r = 0.7;
  const std::vector<std::array<double, 3>> dirs{{1.0, 0.0, 0.0}, {-1.0, 0.0, 0.0}};
  const auto rows = probe_domain_norms(pair, 0.1, {r}, dirs);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].linf_re == doctest::Approx(std::exp(-r)).epsilon(1e-12));
  CHECK(rows[0].linf_im == doctest::Approx(std::exp(-r)).epsilon(1e-12));
  CHECK(rows[1].linf_re == doctest::Approx(std::exp(r)).epsilon(1e-12));
  CHECK(rows[1].linf_im == doctest::Approx(std::exp(r)).epsilon(1e-12));
  CHECK(domain_sup_weighted_linf(rows) == doctest::Approx(weights::phi1(0.1) * std::exp(r)).epsilon(1e-12));
  const auto big = probe_domain_norms(pair, 0.1, {1000.0}, dirs);
  for (const auto& b : big) CHECK(b.overflow);
  CHECK(domain_sup_weighted_linf(big) == 0.0);
  std::istringstream csv(domain_norms_csv(rows));
  std::string header;
  std::getline(csv, header);
  CHECK(header == "t,radius,direction,bmo_re,bmo_im,linf_re,linf_im");
}

}  // TEST_SUITE
