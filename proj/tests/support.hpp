#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "osc/semigroup/operators.hpp"
#include "osc/spectral/field.hpp"
#include "osc/spectral/grid.hpp"
#include "osc/spectral/transform.hpp"

namespace osc::test {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline Grid grid2(int n = 32) { return make_grid(2, n, kTwoPi); }
inline Grid grid3(int n = 16) { return make_grid(3, n, kTwoPi); }

// Uniform random point values in [-1, 1], transformed.
inline SpectralField random_field(const Grid& g, int m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  PointField p(g, m);
  for (double& v : p.values) v = u(rng);
  return forward(p);
}

// Random real field with modes only for |index|_inf <= band.
inline SpectralField random_band(const Grid& g, int m, int band, std::uint64_t seed) {
  SpectralField f = random_field(g, m, seed);
  const auto& t = g.tables();
  for (int c = 0; c < m; ++c) {
    auto a = f.component(c);
    for (std::size_t i = 0; i < g.size(); ++i) {
      for (int ax = 0; ax < g.dim(); ++ax) {
        if (std::abs(t.index[ax][i]) > band) a[i] = 0.0;
      }
    }
  }
  return f;
}

inline SpectralField random_solenoidal(const Grid& g, int band, std::uint64_t seed) {
  return leray_project(random_band(g, g.dim(), band, seed));
}

// Single complex mode c e^{i k.x} in component `comp` (not real-flagged unless
// the mirror mode is set as well).
inline SpectralField mode(const Grid& g, int m, std::array<int, 3> idx, cplx c, int comp = 0) {
  SpectralField f(g, m, false);
  f.component(comp)[g.mode(idx)] = c;
  return f;
}

// a cos(k.x) in component `comp`, real-flagged.
inline SpectralField cos_mode(const Grid& g, int m, std::array<int, 3> idx, double a = 1.0, int comp = 0) {
  SpectralField f(g, m, true);
  f.component(comp)[g.mode(idx)] += 0.5 * a;
  f.component(comp)[g.mode({-idx[0], -idx[1], -idx[2]})] += 0.5 * a;
  return f;
}

// a sin(k.x) in component `comp`, real-flagged.
inline SpectralField sin_mode(const Grid& g, int m, std::array<int, 3> idx, double a = 1.0, int comp = 0) {
  SpectralField f(g, m, true);
  f.component(comp)[g.mode(idx)] += cplx(0.0, -0.5 * a);
  f.component(comp)[g.mode({-idx[0], -idx[1], -idx[2]})] += cplx(0.0, 0.5 * a);
  return f;
}

inline double max_diff(const SpectralField& a, const SpectralField& b) { return (a - b).max_abs(); }

inline double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_abs(const std::vector<double>& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

// Direct O(N^{2d}) forward DFT with 1/N^d normalization.
inline std::vector<cplx> brute_dft(const Grid& g, std::span<const double> values) {
  const std::size_t n = g.size();
  std::vector<cplx> out(n);
  const auto& t = g.tables();
  for (std::size_t k = 0; k < n; ++k) {
    cplx acc = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
      const auto p = position(g, x);
      double phase = 0.0;
      for (int ax = 0; ax < g.dim(); ++ax) phase += t.k[ax][k] * p[ax];
      acc += values[x] * std::exp(cplx(0.0, -phase));
    }
    out[k] = acc / double(n);
  }
  return out;
}

}  // namespace osc::test
