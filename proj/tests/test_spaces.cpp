#include <doctest.h>

#include <sstream>

#include "osc/spaces/bmo.hpp"
#include "osc/spaces/littlewood_paley.hpp"
#include "osc/spaces/norm_report.hpp"
#include "osc/spaces/norms.hpp"
#include "osc/spaces/orlicz.hpp"
#include "osc/weights/weights.hpp"
#include "support.hpp"

using namespace osc;
using namespace osc::test;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// sup over grid-aligned intervals [a, a + s] of the mean oscillation of cos,
// every origin and every side from 4 cells to the full period, with the
// interval integral done by a 64-point midpoint rule per cell.
double brute_bmo_cos(int n) {
  const double h = kTwoPi / n;
  double best = 0.0;
  for (int side = 4; side <= n; ++side) {
    for (int o = 0; o < n; ++o) {
      // Cell-sampled field: piecewise constant cos at the cell's left node.
      double mean = 0.0;
      for (int c = 0; c < side; ++c) mean += std::cos((o + c) * h);
      mean /= side;
      double osc = 0.0;
      for (int c = 0; c < side; ++c) osc += std::abs(std::cos((o + c) * h) - mean);
      best = std::max(best, osc / side);
    }
  }
  return best;
}

// Direct scan of the bmo cube family on a 2D scalar field: sides N, N/2, ...,
// 4 cells at multiples of the side, shifted diagonally by quarter sides.
double family_bmo(const PointField& p) {
  const int n = p.grid.points();
  double best = 0.0;
  for (int side = n; side >= 4; side /= 2) {
    for (int shift = 0; shift < 4; ++shift) {
      const int off = shift * side / 4;
      for (int ox = 0; ox < n; ox += side) {
        for (int oy = 0; oy < n; oy += side) {
          auto at = [&](int a, int b) { return p.values[((ox + off + a) % n) * n + (oy + off + b) % n]; };
          double mean = 0.0;
          for (int a = 0; a < side; ++a)
            for (int b = 0; b < side; ++b) mean += at(a, b);
          mean /= double(side) * side;
          double osc = 0.0;
          for (int a = 0; a < side; ++a)
            for (int b = 0; b < side; ++b) osc += std::abs(at(a, b) - mean);
          best = std::max(best, osc / (double(side) * side));
        }
      }
    }
  }
  return best;
}

}  // namespace

TEST_SUITE("spaces") {

TEST_CASE("LP cutoff profile") {
  CHECK(lp_cutoff(0.0) == 1.0);
  CHECK(lp_cutoff(1.0) == 1.0);
  CHECK(lp_cutoff(2.0) == 0.0);
  CHECK(lp_cutoff(3.0) == 0.0);
  double prev = 1.0;
  for (double r = 1.0; r <= 2.0; r += 0.01) {
    CHECK(lp_cutoff(r) <= prev + 1e-15);
    prev = lp_cutoff(r);
  }
  CHECK(lp_annulus(4.0, 2) == doctest::Approx(1.0));
  CHECK(lp_annulus(4.0, 3) == doctest::Approx(0.0));
  CHECK(lp_annulus(4.0, 1) == doctest::Approx(0.0));
}

TEST_CASE("single mode sits in one block") {
  const Grid g = grid2(64);
  const SpectralField f = cos_mode(g, 1, {4, 0, 0});
  const LPDecomposition d = lp_decompose(f, true);
  int nonzero = 0;
  for (const auto& b : d.blocks) {
    if (b.field.max_abs() > 1e-14) {
      ++nonzero;
      CHECK(b.j == 2);
    }
  }
  CHECK(nonzero == 1);
  CHECK(besov_norm(f, 0.0, kInf, kInf, false) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(besov_norm(f, 1.0, kInf, 1.0, true) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(besov_norm(f, 1.0, kInf, 1.0, true) == doctest::Approx(4.0 * besov_norm(f, 0.0, kInf, kInf, true)));
}

TEST_CASE("constant lives in the low block") {
  const Grid g = grid2(32);
  SpectralField f(g, 1);
  f.component(0)[0] = 3.0;
  const LPDecomposition inh = lp_decompose(f, false);
  for (const auto& b : inh.blocks) {
    if (b.low) {
      CHECK(b.field.max_abs() == doctest::Approx(3.0));
    } else {
      CHECK(b.field.max_abs() == 0.0);
    }
  }
  bool excluded = false;
  CHECK(besov_norm(f, 0.0, kInf, kInf, true, &excluded) == 0.0);
  CHECK(excluded);
}

TEST_CASE("LP reconstruction") {
  for (const Grid& g : {grid2(64), grid3(16)}) {
    for (int seed = 0; seed < 5; ++seed) {
      SpectralField f = random_band(g, 1, g.points() / 3, 100 + seed);
      for (bool hom : {false, true}) {
        if (hom) f.component(0)[0] = 0.0;
        const LPDecomposition d = lp_decompose(f, hom);
        SpectralField sum(g, 1);
        for (const auto& b : d.blocks) sum += b.field;
        CHECK(max_diff(sum, f) <= 1e-10 * f.max_abs());
        for (const auto& b : d.blocks) {
          if (b.low) continue;
          const double lo = std::ldexp(1.0, b.j - 1);
          const double hi = std::ldexp(1.0, b.j + 1);
          for (std::size_t i = 0; i < g.size(); ++i) {
            if (std::abs(b.field.component(0)[i]) > 0.0) {
              CHECK(g.kabs()[i] > lo * (1.0 - 1e-12));
              CHECK(g.kabs()[i] < hi * (1.0 + 1e-12));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("zero field has zero norms") {
  const SpectralField z(grid2(32), 1);
  for (double p : {1.0, 2.0, kInf}) {
    CHECK(lp_norm(z, p) == 0.0);
    for (double s : {-2.0, 0.0, 1.0}) CHECK(besov_norm(z, s, p, 1.0, false) == 0.0);
  }
  CHECK(bmo_norm(z, true) == 0.0);
  CHECK(bmo_norm(z, false) == 0.0);
  CHECK(orlicz_norm(z, OrliczSpec::phi_star()) == 0.0);
}

TEST_CASE("L^p norms") {
  const Grid g = grid2(32);
  SpectralField one(g, 1);
  one.component(0)[0] = 1.0;
  CHECK(lp_norm(one, 2.0) == doctest::Approx(kTwoPi).epsilon(1e-13));
  CHECK(lp_norm(one, 1.0) == doctest::Approx(kTwoPi * kTwoPi).epsilon(1e-13));
  CHECK(std::abs(linf_norm(cos_mode(g, 1, {1, 0, 0})) - 1.0) < 1e-6);
  // Euclidean magnitude of (cos, sin) is 1 everywhere.
  const SpectralField v = stack({cos_mode(g, 1, {1, 0, 0}), sin_mode(g, 1, {1, 0, 0})});
  CHECK(linf_norm(v) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(lp_norm(v, 2.0) == doctest::Approx(kTwoPi).epsilon(1e-13));
}

TEST_CASE("bmo of constants") {
  const Grid g = grid2(64);
  SpectralField c(g, 1);
  c.component(0)[0] = -2.5;
  CHECK(bmo_norm(c, false) < 1e-14);
  CHECK(bmo_norm(c, true) == doctest::Approx(2.5).epsilon(1e-13));
}

TEST_CASE("BMO of cos against a direct cube scan") {
  for (int n : {64, 128}) {
    CAPTURE(n);
    const SpectralField f = cos_mode(grid2(n), 1, {1, 0, 0});
    const double ours = bmo_norm(f, false);
    CHECK(ours == doctest::Approx(family_bmo(inverse(f))).epsilon(1e-12));
    // Every grid interval: the dyadic family undershoots by a bounded factor.
    const double brute = brute_bmo_cos(n);
    CHECK(ours <= brute * (1.0 + 1e-12));
    CHECK(ours >= 0.8 * brute);
  }
  const double a = bmo_norm(cos_mode(grid2(64), 1, {1, 0, 0}), false);
  const double b = bmo_norm(cos_mode(grid2(128), 1, {1, 0, 0}), false);
  CHECK(std::abs(a - b) <= 0.01 * b);
}

TEST_CASE("BMO sup dominates the small-cube sup") {
  const Grid g = grid2(64);
  for (int seed = 0; seed < 6; ++seed) {
    const SpectralField f = random_band(g, 1, 12, 300 + seed);
    const BmoParts p = bmo_parts(f);
    CHECK(p.oscillation_all == doctest::Approx(family_bmo(inverse(f))).epsilon(1e-12));
    CHECK(p.oscillation_all >= p.oscillation_small);
    CHECK(p.unit_side_cells > 0);
  }
}

TEST_CASE("homogeneity and triangle inequality") {
  const Grid g = grid2(64);
  const OrliczSpec phi = OrliczSpec::phi_star();
  const OrliczSpec psi = OrliczSpec::psi_star();
  std::vector<std::pair<std::string, std::function<double(const SpectralField&)>>> norms{
      {"L1", [](const SpectralField& f) { return lp_norm(f, 1.0); }},
      {"L2", [](const SpectralField& f) { return lp_norm(f, 2.0); }},
      {"L3", [](const SpectralField& f) { return lp_norm(f, 3.0); }},
      {"Linf", [](const SpectralField& f) { return linf_norm(f); }},
      {"bmo", [](const SpectralField& f) { return bmo_norm(f, true); }},
      {"BMO", [](const SpectralField& f) { return bmo_norm(f, false); }},
      {"B0inf", [](const SpectralField& f) { return besov_norm(f, 0.0, kInf, kInf, false); }},
      {"hB1inf1", [](const SpectralField& f) { return besov_norm(f, 1.0, kInf, 1.0, true); }},
      {"B-1/2,2,2", [](const SpectralField& f) { return besov_norm(f, -0.5, 2.0, 2.0, false); }},
      {"phi_star", [&](const SpectralField& f) { return orlicz_norm(f, phi); }},
      {"psi_star", [&](const SpectralField& f) { return orlicz_norm(f, psi); }},
  };
  for (int seed = 0; seed < 4; ++seed) {
    const SpectralField f = random_band(g, 1, 10, 500 + seed);
    const SpectralField h = random_band(g, 1, 6, 600 + seed);
    for (const auto& [name, norm] : norms) {
      CAPTURE(name);
      const double nf = norm(f);
      const double tol = name.find("_star") != std::string::npos ? 1e-7 : 1e-10;
      CHECK(norm(-3.0 * f) == doctest::Approx(3.0 * nf).epsilon(tol));
      CHECK(norm(0.25 * f) == doctest::Approx(0.25 * nf).epsilon(tol));
      CHECK(norm(f + h) <= (nf + norm(h)) * (1.0 + tol));
    }
  }
}

TEST_CASE("norm report") {
  const Grid g = grid2(32);
  const NormReport r = make_norm_report(random_band(g, 1, 6, 7), 0.5, {1.0, 2.0});
  for (double v : {r.linf, r.bmo_local, r.bmo_global, r.b0_inf_inf, r.b1_inf_1_hom, r.b0_inf_inf_hom, r.phi1_linf,
                   r.sqrt_t_b1}) {
    CHECK(std::isfinite(v));
    CHECK(v >= 0.0);
  }
  CHECK(r.phi1_linf == doctest::Approx(weights::phi1(0.5) * r.linf));
  CHECK(r.sqrt_t_b1 == doctest::Approx(std::sqrt(0.5) * r.b1_inf_1_hom));
  const auto count = [](const std::string& s) { return std::count(s.begin(), s.end(), ','); };
  CHECK(count(r.csv_header()) == count(r.csv_row()));
  CHECK(r.csv_header().rfind("t,L1,L2,linf", 0) == 0);
  CHECK(r.to_json().at("linf").get<double>() == r.linf);
}

TEST_CASE("Luxemburg norm of the unit-cube indicator") {
  // (1/s) ln(e + 1/s) = 1, solved to 30 digits outside this code base.
  constexpr double kRoot = 1.2567506185377672;
  const Grid g = make_grid(2, 32, 4.0);  // 8 x 8 cells of side 1/8: a unit square
  std::vector<double> mag(g.size(), 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g.coord(i, 0) < 8 && g.coord(i, 1) < 8) mag[i] = 1.0;
  }
  const double s = luxemburg_norm(mag, {}, g.cell_volume(), OrliczSpec::phi_star());
  CHECK(s == doctest::Approx(kRoot).epsilon(2e-8));
}

TEST_CASE("Luxemburg self-consistency") {
  const Grid g = make_grid(2, 32, 4.0);
  std::vector<double> mag(g.size(), 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g.coord(i, 0) >= 4 && g.coord(i, 0) < 20 && g.coord(i, 1) < 12) mag[i] = 3.7;
  }
  for (const OrliczSpec& spec : {OrliczSpec::phi_star(), OrliczSpec::psi_star(), OrliczSpec::psi_k(2.0),
                                 OrliczSpec::custom("square", [](double x) { return x * x; })}) {
    CAPTURE(spec.name);
    const double s = luxemburg_norm(mag, {}, g.cell_volume(), spec);
    const double m = orlicz_modular(mag, {}, g.cell_volume(), spec, s);
    CHECK(m >= 0.999);
    CHECK(m <= 1.001);
  }
  const auto mask = cube_mask(g, CubeDomain{{0, 0, 0}, 8});
  CHECK(std::count(mask.begin(), mask.end(), 1) == 64);
  const double masked = luxemburg_norm(mag, mask, g.cell_volume(), OrliczSpec::phi_star());
  CHECK(orlicz_modular(mag, mask, g.cell_volume(), OrliczSpec::phi_star(), masked) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("profile certificates") {
  CHECK(OrliczSpec::phi_star().certificate.ok());
  CHECK(OrliczSpec::psi_star().certificate.ok());
  const OrliczSpec p3 = OrliczSpec::psi_k(3.0);
  CHECK(p3.certificate.ok());
  CHECK(p3.tangent_point > 0.0);
  CHECK(OrliczSpec::psi_k(1.0).tangent_point == 0.0);
  CHECK_THROWS_AS(OrliczSpec::custom("sqrt", [](double x) { return std::sqrt(x); }), std::invalid_argument);
  CHECK_THROWS_AS(OrliczSpec::custom("shifted", [](double x) { return x * x + 1.0; }), std::invalid_argument);
  CHECK_THROWS_AS(OrliczSpec::custom("decreasing", [](double x) { return -x; }), std::invalid_argument);
  CHECK_FALSE(certify_profile([](double x) { return std::sin(x); }).ok());
}

TEST_CASE("Legendre-Fenchel conjugates") {
  std::vector<double> y;
  for (double v = 0.0; v <= 5.0; v += 0.25) y.push_back(v);
  const Conjugate q = legendre_fenchel([](double x) { return 0.5 * x * x; }, y);
  for (std::size_t i = 0; i < y.size(); ++i) {
    CHECK_FALSE(q.infinite[i]);
    CHECK(std::abs(q.value[i] - 0.5 * y[i] * y[i]) <= 1e-6);
  }
  const Conjugate lin = legendre_fenchel([](double x) { return x; }, y);
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] <= 1.0) {
      CHECK_FALSE(lin.infinite[i]);
      CHECK(std::abs(lin.value[i]) <= 1e-9);
    } else {
      CHECK(lin.infinite[i]);
    }
  }
}

TEST_CASE("conjugate of x ln(e + x) is comparable to e^y") {
  std::vector<double> y;
  for (double v = 2.0; v <= 10.0; v += 0.5) y.push_back(v);
  const Conjugate q = legendre_fenchel([](double x) { return x * std::log(std::exp(1.0) + x); }, y);
  double lo = kInf;
  double hi = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    CHECK_FALSE(q.infinite[i]);
    const double r = q.value[i] / std::exp(y[i]);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  MESSAGE("psi(y)/e^y on [2,10]: [" << lo << ", " << hi << "]");
  CHECK(lo > 0.1);
  CHECK(hi < 0.5);
}

}  // TEST_SUITE
