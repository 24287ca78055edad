#include "osc/semigroup/operators.hpp"

#include <cmath>
#include <stdexcept>

#include "osc/simd/kernels.hpp"
#include "osc/spectral/transform.hpp"
#include "osc/util/log.hpp"

namespace osc {
namespace {

const cplx I(0.0, 1.0);

// Derivative-type symbols see Nyquist modes as k = 0: the lattice mirror of
// such a mode is not -k, so odd and mixed symbols would break reality there.
bool derivative_blind(const GridTables& t, std::size_t k) { return t.nyquist[k] != 0 || k == 0; }

void require_vector(const SpectralField& u, const char* what) {
  if (u.components() != u.grid().dim()) {
    throw std::invalid_argument(std::string(what) + " needs a d-component vector field");
  }
}

}  // namespace

SpectralField MultiplierOp::apply(const SpectralField& f) const {
  if (symbol.size() != f.grid().size()) throw std::invalid_argument("multiplier size mismatch");
  SpectralField out(f.grid(), f.components(), f.is_real());
  const auto& nyq = f.grid().tables().nyquist;
  for (int c = 0; c < f.components(); ++c) {
    auto src = f.component(c);
    auto dst = out.component(c);
    for (std::size_t k = 0; k < src.size(); ++k) {
      dst[k] = (odd && nyq[k]) ? cplx(0.0, 0.0) : symbol[k] * src[k];
    }
  }
  return out;
}

SpectralField heat_apply(const SpectralField& f, double t) {
  if (t < 0.0) throw std::invalid_argument("heat semigroup needs t >= 0");
  SpectralField out = f;
  if (t == 0.0) return out;
  const auto& k2 = f.grid().k2();
  std::vector<double> decay(k2.size());
  for (std::size_t k = 0; k < k2.size(); ++k) decay[k] = std::exp(-t * k2[k]);
  for (int c = 0; c < f.components(); ++c) simd::scale_real(out.component(c), decay);
  return out;
}

SpectralField frac_heat_apply(const SpectralField& f, double t, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("fractional power needs alpha > 0");
  if (!(t > 0.0)) throw std::invalid_argument("fractional heat needs t > 0");
  SpectralField out = f;
  const auto& k2 = f.grid().k2();
  std::vector<double> sym(k2.size());
  for (std::size_t k = 0; k < k2.size(); ++k) sym[k] = std::pow(k2[k], alpha) * std::exp(-t * k2[k]);
  for (int c = 0; c < f.components(); ++c) simd::scale_real(out.component(c), sym);
  return out;
}

SpectralField partial(const SpectralField& f, int axis) {
  const Grid& g = f.grid();
  if (axis < 0 || axis >= g.dim()) throw std::invalid_argument("derivative axis out of range");
  const auto& t = g.tables();
  SpectralField out(g, f.components(), f.is_real());
  for (int c = 0; c < f.components(); ++c) {
    auto src = f.component(c);
    auto dst = out.component(c);
    for (std::size_t k = 0; k < src.size(); ++k) {
      dst[k] = t.nyquist[k] ? cplx(0.0, 0.0) : I * t.k[axis][k] * src[k];
    }
  }
  return out;
}

SpectralField gradient(const SpectralField& f) {
  const int d = f.grid().dim();
  SpectralField out(f.grid(), f.components() * d, f.is_real());
  for (int c = 0; c < f.components(); ++c) {
    SpectralField fc = component_of(f, c);
    for (int a = 0; a < d; ++a) {
      SpectralField da = partial(fc, a);
      auto src = da.component(0);
      std::copy(src.begin(), src.end(), out.component(c * d + a).begin());
    }
  }
  return out;
}

SpectralField divergence(const SpectralField& u) {
  require_vector(u, "divergence");
  const Grid& g = u.grid();
  const auto& t = g.tables();
  SpectralField out(g, 1, u.is_real());
  auto dst = out.component(0);
  for (int a = 0; a < g.dim(); ++a) {
    auto src = u.component(a);
    for (std::size_t k = 0; k < src.size(); ++k) {
      if (!t.nyquist[k]) dst[k] += I * t.k[a][k] * src[k];
    }
  }
  return out;
}

SpectralField curl(const SpectralField& u) {
  require_vector(u, "curl");
  const Grid& g = u.grid();
  const auto& t = g.tables();
  if (g.dim() == 2) {
    SpectralField out(g, 1, u.is_real());
    auto dst = out.component(0);
    auto u1 = u.component(0);
    auto u2 = u.component(1);
    for (std::size_t k = 0; k < dst.size(); ++k) {
      if (!t.nyquist[k]) dst[k] = I * (t.k[0][k] * u2[k] - t.k[1][k] * u1[k]);
    }
    return out;
  }
  SpectralField out(g, 3, u.is_real());
  for (int c = 0; c < 3; ++c) {
    const int a = (c + 1) % 3;
    const int b = (c + 2) % 3;
    auto ua = u.component(a);
    auto ub = u.component(b);
    auto dst = out.component(c);
    for (std::size_t k = 0; k < dst.size(); ++k) {
      if (!t.nyquist[k]) dst[k] = I * (t.k[a][k] * ub[k] - t.k[b][k] * ua[k]);
    }
  }
  return out;
}

SpectralField laplacian(const SpectralField& f) {
  SpectralField out = f;
  const auto& k2 = f.grid().k2();
  std::vector<double> sym(k2.size());
  for (std::size_t k = 0; k < k2.size(); ++k) sym[k] = -k2[k];
  for (int c = 0; c < f.components(); ++c) simd::scale_real(out.component(c), sym);
  return out;
}

SpectralField directional_derivative(const SpectralField& f, std::span<const double> alpha) {
  const Grid& g = f.grid();
  if (static_cast<int>(alpha.size()) != g.dim()) throw std::invalid_argument("shift dimension");
  const auto& t = g.tables();
  SpectralField out(g, f.components(), f.is_real());
  for (int c = 0; c < f.components(); ++c) {
    auto src = f.component(c);
    auto dst = out.component(c);
    for (std::size_t k = 0; k < src.size(); ++k) {
      if (t.nyquist[k]) continue;
      double ak = 0.0;
      for (int a = 0; a < g.dim(); ++a) ak += alpha[a] * t.k[a][k];
      dst[k] = I * ak * src[k];
    }
  }
  return out;
}

SpectralField leray_project(const SpectralField& u) {
  require_vector(u, "Leray projection");
  const Grid& g = u.grid();
  const int d = g.dim();
  const auto& t = g.tables();
  SpectralField out(g, d, u.is_real());
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (derivative_blind(t, k)) {
      for (int a = 0; a < d; ++a) out.component(a)[k] = u.component(a)[k];
      continue;
    }
    cplx kdotu(0.0, 0.0);
    for (int a = 0; a < d; ++a) kdotu += t.k[a][k] * u.component(a)[k];
    const cplx s = kdotu / t.k2[k];
    for (int a = 0; a < d; ++a) out.component(a)[k] = u.component(a)[k] - t.k[a][k] * s;
  }
  return out;
}

void dealias_inplace(SpectralField& f) {
  const auto& mask = f.grid().tables().dealias;
  for (int c = 0; c < f.components(); ++c) {
    auto u = f.component(c);
    for (std::size_t k = 0; k < u.size(); ++k) {
      if (!mask[k]) u[k] = cplx(0.0, 0.0);
    }
  }
}

SpectralField dealias(SpectralField f) {
  dealias_inplace(f);
  return f;
}

SpectralField flux_tensor(const SpectralField& a, const SpectralField& b) {
  require_vector(a, "flux tensor");
  require_vector(b, "flux tensor");
  const Grid& g = a.grid();
  const int d = g.dim();
  const PointField pa = inverse(dealias(a));
  const PointField pb = &a == &b ? pa : inverse(dealias(b));
  PointField prod(g, d * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) simd::mul(prod.component(i * d + j), pa.component(i), pb.component(j));
  }
  SpectralField out = forward(prod);
  dealias_inplace(out);
  return out;
}

SpectralField tensor_divergence(const SpectralField& tensor) {
  const Grid& g = tensor.grid();
  const int d = g.dim();
  if (tensor.components() != d * d) throw std::invalid_argument("tensor divergence needs d*d components");
  const auto& t = g.tables();
  SpectralField out(g, d, tensor.is_real());
  for (int i = 0; i < d; ++i) {
    auto dst = out.component(i);
    for (int j = 0; j < d; ++j) {
      auto src = tensor.component(i * d + j);
      for (std::size_t k = 0; k < dst.size(); ++k) {
        if (!t.nyquist[k]) dst[k] += I * t.k[j][k] * src[k];
      }
    }
  }
  return out;
}

SpectralField advect(const SpectralField& a, const SpectralField& b) {
  require_vector(a, "advection");
  require_vector(b, "advection");
  const Grid& g = a.grid();
  const int d = g.dim();
  const double div = divergence(a).max_abs();
  if (div > 1e-8 * std::max(1.0, a.max_abs())) {
    log().warn("advect: transporting field is not divergence-free (max |k.a| = {:.3e})", div);
  }
  const PointField pa = inverse(dealias(a));
  const PointField grad_b = inverse(gradient(dealias(b)));
  PointField out_pts(g, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) simd::mul_add(out_pts.component(i), pa.component(j), grad_b.component(i * d + j));
  }
  SpectralField out = forward(out_pts);
  dealias_inplace(out);
  return out;
}

SpectralField advect_divergence_form(const SpectralField& a, const SpectralField& b) {
  // (a_j b_i) summed over j: transpose of flux_tensor(a, b) = a_i b_j.
  SpectralField ab = flux_tensor(b, a);
  return tensor_divergence(ab);
}

PressurePair pressure_from_fluxes(const SpectralField& a, const SpectralField& b) {
  const Grid& g = a.grid();
  const int d = g.dim();
  const auto& t = g.tables();
  PressurePair p{SpectralField(g, 1, a.is_real()), SpectralField(g, 1, b.is_real())};
  auto pi = p.pi.component(0);
  auto r = p.r.component(0);
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (derivative_blind(t, k)) continue;
    cplx sa(0.0, 0.0);
    cplx sb(0.0, 0.0);
    for (int j = 0; j < d; ++j) {
      for (int l = 0; l < d; ++l) {
        const double kk = t.k[j][k] * t.k[l][k];
        sa += kk * a.component(j * d + l)[k];
        sb += kk * b.component(j * d + l)[k];
      }
    }
    pi[k] = -sa / t.k2[k];
    r[k] = -2.0 * sb / t.k2[k];
  }
  return p;
}

PressurePair pressure_pair(const SpectralField& u, const SpectralField& v) {
  SpectralField a = flux_tensor(u, u);
  a -= flux_tensor(v, v);
  return pressure_from_fluxes(a, flux_tensor(u, v));
}

SpectralField biot_savart(const SpectralField& w) {
  const Grid& g = w.grid();
  if (g.dim() != 3) throw std::invalid_argument("Biot-Savart law is implemented for d = 3");
  require_vector(w, "Biot-Savart");
  const auto& t = g.tables();
  SpectralField out(g, 3, w.is_real());
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (derivative_blind(t, k)) continue;
    for (int c = 0; c < 3; ++c) {
      const int a = (c + 1) % 3;
      const int b = (c + 2) % 3;
      out.component(c)[k] =
          I * (t.k[a][k] * w.component(b)[k] - t.k[b][k] * w.component(a)[k]) / t.k2[k];
    }
  }
  return out;
}

}  // namespace osc
