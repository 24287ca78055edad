#include "osc/iteration/forcing.hpp"

#include <algorithm>
#include <cmath>

#include "osc/errors.hpp"
#include "osc/probe/directions.hpp"
#include "osc/semigroup/operators.hpp"
#include "osc/spaces/bmo.hpp"
#include "osc/spectral/transform.hpp"
#include "osc/util/log.hpp"

namespace osc {
namespace {

double divergence_defect(const SpectralField& f) {
  const auto& kabs = f.grid().kabs();
  double scale = 0.0;
  for (int c = 0; c < f.components(); ++c) {
    auto u = f.component(c);
    for (std::size_t k = 0; k < u.size(); ++k) scale = std::max(scale, kabs[k] * std::abs(u[k]));
  }
  if (scale == 0.0) return 0.0;
  return divergence(f).max_abs() / scale;
}

void check_field(const SpectralField& f, const Grid& grid, const char* what) {
  if (f.grid() != grid) throw ConfigError(std::string(what) + " is on a different grid");
  if (f.components() != grid.dim()) throw ConfigError(std::string(what) + " must be a d-vector field");
  if (!f.is_real()) throw ConfigError(std::string(what) + " must be real");
  const double defect = divergence_defect(f);
  if (defect > 1e-12) {
    throw ConfigError(std::string(what) + " is not divergence-free (relative defect " +
                      std::to_string(defect) + ")");
  }
}

PointField part(const ComplexPointField& z, bool imag) {
  PointField out(z.grid, z.components);
  for (std::size_t i = 0; i < z.values.size(); ++i) out.values[i] = imag ? z.values[i].imag() : z.values[i].real();
  return out;
}

}  // namespace

ComplexPair split_complex(const SpectralField& c) {
  const Grid& g = c.grid();
  const auto& mirror = g.tables().mirror;
  ComplexPair out(g, c.components());
  const cplx half_i(0.0, 0.5);
  for (int m = 0; m < c.components(); ++m) {
    auto src = c.component(m);
    auto re = out.re.component(m);
    auto im = out.im.component(m);
    for (std::size_t k = 0; k < src.size(); ++k) {
      const cplx a = src[k];
      const cplx b = std::conj(src[mirror[k]]);
      re[k] = 0.5 * (a + b);
      im[k] = -half_i * (a - b);
    }
  }
  return out;
}

ComplexPair ForcingSpec::at(const Grid& grid, int components, double t, std::span<const double> alpha) const {
  if (g) {
    return ComplexPair(f ? *f : SpectralField(grid, components), *g);
  }
  if (!f) return ComplexPair(grid, components);
  SpectralField c = *f;
  c.set_real(false);
  const int d = grid.dim();
  for (std::size_t k = 0; k < grid.size(); ++k) {
    double ky = 0.0;
    for (int a = 0; a < d; ++a) ky += grid.k(a)[k] * alpha[a] * t;
    if (ky == 0.0) continue;
    const double w = std::exp(-ky);
    for (int m = 0; m < components; ++m) c.component(m)[k] *= w;
  }
  ComplexPair out = split_complex(c);
  return out;
}

void validate_forcing(const ForcingSpec& spec, const Grid& grid) {
  if (spec.f) check_field(*spec.f, grid, "forcing f");
  if (spec.g) check_field(*spec.g, grid, "forcing partner g");
  if (!(spec.delta_f > 0.0)) throw ConfigError("forcing radius delta_f must be positive");
}

double forcing_level(const ForcingSpec& spec) {
  if (spec.zero()) return 0.0;
  if (spec.g) {
    return (spec.f ? bmo_norm(*spec.f, true) : 0.0) + bmo_norm(*spec.g, true);
  }
  const SpectralField& f = *spec.f;
  const int d = f.grid().dim();
  double level = bmo_norm(f, true);
  for (double r : {0.5 * spec.delta_f, spec.delta_f}) {
    for (const auto& dir : probe_directions(d)) {
      std::array<double, 3> y{};
      for (int a = 0; a < d; ++a) y[a] = r * dir[a];
      const ShiftEvaluation e = evaluate_complex_shift(f, std::span<const double>(y.data(), d));
      if (e.overflow) {
        log().warn("forcing shift overflow at |y| = {}; sample skipped", r);
        continue;
      }
      level = std::max(level, bmo_norm(part(e.values, false), true) + bmo_norm(part(e.values, true), true));
    }
  }
  return level;
}

}  // namespace osc
