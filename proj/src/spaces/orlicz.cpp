#include "osc/spaces/orlicz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "osc/spectral/transform.hpp"

namespace osc {
namespace {

constexpr double kE = std::numbers::e;

bool masked_in(std::span<const std::uint8_t> mask, std::size_t i) {
  return mask.empty() || mask[i] != 0;
}

// Root of e^u (1 - u/k) = 1 on (k-1, k): the tangency abscissa (in u = x^{1/k})
// of the line from the origin touching e^{x^{1/k}} - 1.
double psi_k_tangent_u(double k) {
  double lo = k - 1.0;
  double hi = k;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double h = std::exp(mid) * (1.0 - mid / k) - 1.0;
    (h > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

ConvexityCertificate certify_profile(const std::function<double(double)>& phi, double x_lo,
                                     double x_hi, int samples, double tol) {
  ConvexityCertificate cert;
  cert.zero_at_origin = std::abs(phi(0.0)) <= tol;
  std::vector<double> x(samples + 1);
  x[0] = 0.0;
  const double ratio = std::pow(x_hi / x_lo, 1.0 / (samples - 1));
  for (int i = 1; i <= samples; ++i) x[i] = x_lo * std::pow(ratio, i - 1);
  std::vector<double> v(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) v[i] = phi(x[i]);

  cert.increasing = true;
  cert.convex = true;
  double prev_slope = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    if (v[i + 1] < v[i]) cert.increasing = false;
    const double slope = (v[i + 1] - v[i]) / (x[i + 1] - x[i]);
    if (std::isfinite(prev_slope)) {
      const double defect = (slope - prev_slope) / std::max(1.0, std::abs(prev_slope));
      cert.worst_defect = std::min(cert.worst_defect, defect);
      if (defect < -tol) cert.convex = false;
    }
    prev_slope = slope;
  }
  return cert;
}

OrliczSpec OrliczSpec::phi_star() {
  OrliczSpec s;
  s.kind = Kind::phi_star;
  s.name = "phi_star";
  s.profile = [](double x) { return x * std::log(kE + x); };
  s.certificate = certify_profile(s.profile);
  return s;
}

OrliczSpec OrliczSpec::psi_star() {
  OrliczSpec s;
  s.kind = Kind::psi_star;
  s.name = "psi_star";
  s.profile = [](double x) { return std::expm1(x); };
  s.certificate = certify_profile(s.profile);
  return s;
}

OrliczSpec OrliczSpec::psi_k(double k) {
  if (!(k >= 1.0)) throw std::invalid_argument("psi_k needs k >= 1");
  OrliczSpec s;
  s.kind = Kind::psi_k;
  s.name = "psi_k";
  s.k = k;
  if (k == 1.0) {
    s.profile = [](double x) { return std::expm1(x); };
  } else {
    const double u = psi_k_tangent_u(k);
    const double xt = std::pow(u, k);
    const double slope = std::expm1(u) / xt;
    s.tangent_point = xt;
    s.profile = [k, xt, slope](double x) {
      return x < xt ? slope * x : std::expm1(std::pow(x, 1.0 / k));
    };
  }
  s.certificate = certify_profile(s.profile);
  return s;
}

OrliczSpec OrliczSpec::custom(std::string name, std::function<double(double)> profile) {
  OrliczSpec s;
  s.kind = Kind::custom;
  s.name = std::move(name);
  s.profile = std::move(profile);
  s.certificate = certify_profile(s.profile);
  if (!s.certificate.ok()) {
    throw std::invalid_argument("profile '" + s.name + "' is not convex, increasing with phi(0)=0");
  }
  return s;
}

double orlicz_modular(std::span<const double> magnitude, std::span<const std::uint8_t> mask,
                      double cell_volume, const OrliczSpec& spec, double s) {
  double acc = 0.0;
  for (std::size_t i = 0; i < magnitude.size(); ++i) {
    if (!masked_in(mask, i)) continue;
    acc += spec(std::abs(magnitude[i]) / s);
  }
  return acc * cell_volume;
}

double luxemburg_norm(std::span<const double> magnitude, std::span<const std::uint8_t> mask,
                      double cell_volume, const OrliczSpec& spec) {
  double m = 0.0;
  for (std::size_t i = 0; i < magnitude.size(); ++i) {
    if (masked_in(mask, i)) m = std::max(m, std::abs(magnitude[i]));
  }
  if (m == 0.0) return 0.0;
  auto integral = [&](double s) { return orlicz_modular(magnitude, mask, cell_volume, spec, s); };

  double hi = m;
  double lo = m;
  int guard = 0;
  while (integral(hi) > 1.0 && guard++ < 2000) hi *= 2.0;
  guard = 0;
  while (integral(lo) <= 1.0 && guard++ < 2000) lo *= 0.5;
  if (lo == hi) lo = hi * 0.5;
  while (hi / lo - 1.0 > 1e-8) {
    const double mid = std::sqrt(lo * hi);
    (integral(mid) > 1.0 ? lo : hi) = mid;
  }
  return hi;
}

std::vector<std::uint8_t> cube_mask(const Grid& grid, const CubeDomain& cube) {
  std::vector<std::uint8_t> mask(grid.size(), 0);
  if (cube.side <= 0) {
    std::fill(mask.begin(), mask.end(), 1);
    return mask;
  }
  const int n = grid.points();
  for (std::size_t p = 0; p < grid.size(); ++p) {
    bool inside = true;
    for (int a = 0; a < grid.dim() && inside; ++a) {
      const int rel = ((grid.coord(p, a) - cube.origin[a]) % n + n) % n;
      inside = rel < cube.side;
    }
    mask[p] = inside ? 1 : 0;
  }
  return mask;
}

double orlicz_norm(const SpectralField& f, const OrliczSpec& spec, const CubeDomain& domain) {
  const PointField pts = inverse(f);
  const std::vector<double> mag = magnitude(pts);
  const auto mask = cube_mask(f.grid(), domain);
  return luxemburg_norm(mag, mask, f.grid().cell_volume(), spec);
}

Conjugate legendre_fenchel(const std::function<double(double)>& phi, std::span<const double> y) {
  constexpr int kPerDecade = 100;
  constexpr double kLo = 1e-12;
  constexpr double kHi = 1e12;
  const int count = 24 * kPerDecade + 1;
  std::vector<double> xs(count + 1);
  std::vector<double> phis(count + 1);
  xs[0] = 0.0;
  for (int i = 1; i <= count; ++i) xs[i] = kLo * std::pow(10.0, (i - 1) / double(kPerDecade));
  xs[count] = kHi;
  for (int i = 0; i <= count; ++i) phis[i] = phi(xs[i]);

  Conjugate out;
  out.y.assign(y.begin(), y.end());
  out.value.resize(y.size());
  out.infinite.assign(y.size(), 0);
  out.argmax.resize(y.size());

  for (std::size_t q = 0; q < y.size(); ++q) {
    const double yy = y[q];
    auto obj = [&](double x) { return x * yy - phi(x); };
    int best = 0;
    double best_v = -phis[0];
    for (int i = 1; i <= count; ++i) {
      const double v = xs[i] * yy - phis[i];
      if (v > best_v) {
        best_v = v;
        best = i;
      }
    }
    if (best == count) {
      out.infinite[q] = 1;
      out.value[q] = std::numeric_limits<double>::infinity();
      out.argmax[q] = kHi;
      continue;
    }
    double a = xs[std::max(best - 1, 0)];
    double b = xs[std::min(best + 1, count)];
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - g * (b - a);
    double d = a + g * (b - a);
    double fc = obj(c);
    double fd = obj(d);
    for (int it = 0; it < 200 && (b - a) > 1e-14 * std::max(1.0, b); ++it) {
      if (fc > fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - g * (b - a);
        fc = obj(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + g * (b - a);
        fd = obj(d);
      }
    }
    const double xm = 0.5 * (a + b);
    const double vm = obj(xm);
    if (vm > best_v) {
      out.value[q] = vm;
      out.argmax[q] = xm;
    } else {
      out.value[q] = best_v;
      out.argmax[q] = xs[best];
    }
  }
  return out;
}

}  // namespace osc
