#include <doctest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <sstream>

#include "osc/weights/horizons.hpp"
#include "osc/weights/weights.hpp"

using namespace osc::weights;

namespace {

const double kE = std::exp(1.0);

double lw(double r) { return std::log(kE + 1.0 / r); }

// Independent weights: tanh-sinh quadrature on the raw definitions, with the
// singular factor written in terms of the distance to the endpoint.
struct Oracle {
  boost::math::quadrature::tanh_sinh<double> ts;

  double psi1(double t) {
    return ts.integrate([](double r) { return lw(r); }, 0.0, t) / t;
  }
  double psi2(double t) {
    return ts.integrate([](double r) { return lw(r) / std::sqrt(r); }, 0.0, t) / std::sqrt(t);
  }
  double psi4(double t) {
    const double i = ts.integrate([&](double s) { return lw(s) * lw(s) / std::sqrt(t - s); }, 0.0, t);
    return i / (lw(t) * std::sqrt(t));
  }
  double psi5(double t) {
    return ts.integrate([&](double s) { return lw(s) / std::sqrt(s * (t - s)); }, 0.0, t);
  }
  double Psi2(double t) {
    const double p1 = 1.0 / lw(t);
    const double p2 = psi2(t);
    const double p4 = psi4(t);
    return std::max({p2, p4, psi5(t), p1 * p2, p4 / p1});
  }
};

// t, psi1, psi2, psi4, psi5, Psi1w, Psi2w from 30-digit quadrature done
// outside this code base.
struct Frozen {
  double t, psi1, psi2, psi4, psi5, Psi1w, Psi2w;
};
constexpr Frozen kFrozen[] = {
    {0.001, 7.9091131900580865, 17.817321269948573, 16.586002334365751, 26.060790939012892, 553.97241564558656,
     15.046542276776088},
    {0.01, 5.6186400911763699, 13.228316352816114, 12.142683452497645, 18.865010883191069, 206.36160239783484,
     10.473607336982284},
    {0.1, 3.4276263784689705, 8.7732657997667877, 7.9414814655954117, 11.978008881627661, 50.527118830735701,
     6.1608043514978887},
    {1.0, 1.796383663234292, 5.1147273454475202, 4.3062601324814413, 6.7507599774501591, 8.8530541055020567,
     3.1899696619813354},
    {4.0, 1.315542245132972, 3.7242531412921474, 2.9205612325485317, 5.0190037554976725, 4.0624916847368438,
     2.4322851919942846},
};

}  // namespace

TEST_SUITE("weights") {

TEST_CASE("closed forms") {
  CHECK(phi1(1.0) == doctest::Approx(1.0 / std::log(kE + 1.0)).epsilon(1e-15));
  CHECK(phi2(4.0) == 2.0);
  CHECK(psi3(0.5) == doctest::Approx(phi1(0.5) * psi1(0.5)).epsilon(1e-15));
  CHECK(Phi1(0.0) == 1.0);
  CHECK(Phi1(10.0) == doctest::Approx(std::log(kE + 10.0)));
  CHECK(Phi2(1e-3) == doctest::Approx(1.0 / psi2(1e-3)));
  CHECK_THROWS_AS(weight("psi2", 0.0), std::invalid_argument);
  CHECK_THROWS_AS(weight("psi2", -1.0), std::invalid_argument);
  CHECK_THROWS_AS(weight("psi9", 1.0), std::invalid_argument);
  CHECK_THROWS_AS(psi1(0.0), std::invalid_argument);
}

TEST_CASE("frozen quadrature values") {
  for (const Frozen& f : kFrozen) {
    CAPTURE(f.t);
    CHECK(psi1(f.t) == doctest::Approx(f.psi1).epsilon(1e-6));
    CHECK(psi2(f.t) == doctest::Approx(f.psi2).epsilon(1e-6));
    CHECK(psi4(f.t) == doctest::Approx(f.psi4).epsilon(1e-6));
    CHECK(psi5(f.t) == doctest::Approx(f.psi5).epsilon(1e-6));
    CHECK(Psi1_omega(f.t) == doctest::Approx(f.Psi1w).epsilon(1e-6));
    CHECK(Psi2_omega(f.t) == doctest::Approx(f.Psi2w).epsilon(1e-6));
  }
}

TEST_CASE("adaptive quadrature oracle at 20 times") {
  Oracle o;
  for (int i = 0; i < 20; ++i) {
    const double t = std::pow(10.0, -6.0 + 7.0 * i / 19.0);
    CAPTURE(t);
    CHECK(psi1(t) == doctest::Approx(o.psi1(t)).epsilon(1e-6));
    CHECK(psi2(t) == doctest::Approx(o.psi2(t)).epsilon(1e-6));
    CHECK(psi4(t) == doctest::Approx(o.psi4(t)).epsilon(1e-6));
    CHECK(psi5(t) == doctest::Approx(o.psi5(t)).epsilon(1e-6));
    CHECK(Psi2(t) == doctest::Approx(o.Psi2(t)).epsilon(1e-6));
  }
}

TEST_CASE("envelope properties") {
  double prev = 0.0;
  for (double t = 1e-6; t < 100.0; t *= 1.7) {
    CHECK(Psi1(t) >= 1.0);
    CHECK(Psi1(t) >= psi1(t));
    CHECK(Psi2(t) >= psi2(t));
    CHECK(Psi2(t) >= psi5(t));
    CHECK(phi1(t) > prev);
    prev = phi1(t);
  }
}

TEST_CASE("weight table") {
  const WeightTable table(10.0, 1e-6, 256);
  for (const auto name : kColumns) {
    for (double v : table.column(name)) {
      CHECK(std::isfinite(v));
      CHECK(v > 0.0);
    }
  }
  for (double t : {3.3e-6, 0.00123, 0.0517, 0.77, 7.1}) {
    for (const auto name : kColumns) {
      CAPTURE(t);
      CAPTURE(std::string(name));
      CHECK(table.value(name, t) == doctest::Approx(weight(name, t)).epsilon(1e-4));
    }
  }
  CHECK(table.value("psi2", 50.0) == doctest::Approx(psi2(50.0)));
  std::istringstream csv(table.to_csv());
  std::string header;
  std::getline(csv, header);
  CHECK(header == "t,phi1,phi2,psi1,psi2,psi3,psi4,psi5,Psi1,Psi2");
  int rows = 0;
  for (std::string line; std::getline(csv, line);) ++rows;
  CHECK(rows == 256);
  CHECK(table.metadata().contains("quadrature"));
}

TEST_CASE("shift bound") {
  // sup_{t<1} t^{1/2} psi2(t) is attained at t = 1 (increasing integral).
  CHECK(shift_bound(1.0, 1.0) == doctest::Approx(1.0 / (2.0 * 5.1147273454475202)).epsilon(1e-6));
  CHECK(shift_bound(1.0, 2.0) == doctest::Approx(0.5 * shift_bound(1.0, 1.0)).epsilon(1e-14));
  double prev = std::numeric_limits<double>::infinity();
  for (double T = 1e-4; T < 100.0; T *= 3.0) {
    const double b = shift_bound(T, 1.0);
    CHECK(b <= prev);
    prev = b;
  }
  CHECK(shift_bound(1e-6, 1.0) > 10.0);
  CHECK_THROWS_AS(shift_bound(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(shift_bound(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("velocity horizon") {
  HorizonInput in;
  in.C = 1.0;
  in.u0_bmo = 1.0;
  const HorizonResult r = horizon_tstar(in);
  CHECK_FALSE(r.saturated);
  CHECK_FALSE(r.below_range);
  CHECK(r.slack <= 0.0);
  CHECK(r.slack >= -1e-8);
  CHECK(tstar_excess(in, r.T * (1.0 + 1e-8)) > 0.0);

  // Dense scan of the raw inequality with the oracle weights.
  Oracle o;
  double last_ok = 0.0;
  double first_bad = 0.0;
  for (int i = 0; i <= 400; ++i) {
    const double T = std::pow(10.0, -8.0 + 11.0 * i / 400.0);
    if (std::sqrt(T) * o.Psi2(T) * in.C * in.u0_bmo <= 1.0) {
      last_ok = T;
    } else {
      first_bad = T;
      break;
    }
  }
  CHECK(r.T >= last_ok * (1.0 - 1e-6));
  CHECK(r.T <= first_bad * (1.0 + 1e-6));

  HorizonInput big = in;
  big.u0_bmo = 4.0;
  CHECK(horizon_tstar(big).T < r.T);

  HorizonInput tiny = in;
  tiny.u0_bmo = 1e-9;
  const HorizonResult s = horizon_tstar(tiny);
  CHECK(s.saturated);
  CHECK(s.T == in.t_max);

  HorizonInput forced = in;
  forced.gamma = 5.0;
  const HorizonResult f = horizon_tstar(forced);
  CHECK(f.T < r.T);
  CHECK(f.slack <= 0.0);
  CHECK(f.slack >= -1e-8);

  HorizonInput bad = in;
  bad.C = 0.0;
  CHECK_THROWS_AS(horizon_tstar(bad), std::invalid_argument);
  bad = in;
  bad.u0_bmo = -1.0;
  CHECK_THROWS_AS(horizon_tstar(bad), std::invalid_argument);
}

TEST_CASE("vorticity horizons") {
  HorizonInput in;
  in.C = 1.0;
  in.w0_bmo = 1.5;
  in.w0_lp = 2.0;
  in.p = 2.0;
  const HorizonResult p2 = horizon_tomega(in);
  in.p = 1.0;
  const HorizonResult p1 = horizon_tomega(in);
  for (const HorizonResult& r : {p1, p2}) {
    CHECK_FALSE(r.saturated);
    CHECK(r.slack <= 0.0);
    CHECK(r.slack >= -1e-8);
  }
  CHECK(p1.T <= p2.T);
  CHECK(tomega_excess(in, p1.T) == doctest::Approx(p1.slack));
  in.p = 2.0;
  CHECK(tomega_excess(in, p2.T) <= 0.0);

  // Doubling the data shrinks the p = 1 horizon by more.
  HorizonInput dbl = in;
  dbl.w0_bmo *= 2.0;
  dbl.w0_lp *= 2.0;
  const double shrink_p2 = horizon_tomega(dbl).T / p2.T;
  dbl.p = 1.0;
  const double shrink_p1 = horizon_tomega(dbl).T / p1.T;
  CHECK(shrink_p1 < shrink_p2);

  HorizonInput bad = in;
  bad.p = 3.0;
  CHECK_THROWS_AS(horizon_tomega(bad), std::invalid_argument);
  bad.p = 0.5;
  CHECK_THROWS_AS(horizon_tomega(bad), std::invalid_argument);
}

}  // TEST_SUITE
