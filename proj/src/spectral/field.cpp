#include "osc/spectral/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "osc/simd/kernels.hpp"

namespace osc {

SpectralField::SpectralField(const Grid& grid, int components, bool real)
    : grid_(grid), components_(components), real_(real) {
  if (components < 1) throw std::invalid_argument("field needs at least one component");
  coeffs_.assign(grid.size() * static_cast<std::size_t>(components), cplx(0.0, 0.0));
}

void SpectralField::check_compatible(const SpectralField& o) const {
  if (grid_ != o.grid_ || components_ != o.components_) {
    throw std::invalid_argument("field shape mismatch");
  }
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  check_compatible(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  real_ = real_ && o.real_;
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  check_compatible(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  real_ = real_ && o.real_;
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

SpectralField& SpectralField::axpy(double s, const SpectralField& o) {
  check_compatible(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += s * o.coeffs_[i];
  real_ = real_ && o.real_;
  return *this;
}

void SpectralField::set_zero() { std::fill(coeffs_.begin(), coeffs_.end(), cplx(0.0, 0.0)); }

double SpectralField::max_abs() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

double SpectralField::reality_defect() const {
  const auto& mirror = grid_.tables().mirror;
  double m = 0.0;
  for (int c = 0; c < components_; ++c) {
    auto u = component(c);
    for (std::size_t f = 0; f < u.size(); ++f) {
      m = std::max(m, std::abs(u[mirror[f]] - std::conj(u[f])));
    }
  }
  return m;
}

void SpectralField::symmetrize() {
  const auto& mirror = grid_.tables().mirror;
  for (int c = 0; c < components_; ++c) {
    auto u = component(c);
    std::vector<cplx> out(u.size());
    for (std::size_t f = 0; f < u.size(); ++f) out[f] = 0.5 * (u[f] + std::conj(u[mirror[f]]));
    std::copy(out.begin(), out.end(), u.begin());
  }
  real_ = true;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double s, SpectralField a) { return a *= s; }

SpectralField component_of(const SpectralField& f, int c) {
  SpectralField out(f.grid(), 1, f.is_real());
  auto src = f.component(c);
  std::copy(src.begin(), src.end(), out.component(0).begin());
  return out;
}

SpectralField stack(const std::vector<SpectralField>& parts) {
  if (parts.empty()) throw std::invalid_argument("stack of zero fields");
  int m = 0;
  bool real = true;
  for (const auto& p : parts) {
    if (p.grid() != parts.front().grid()) throw std::invalid_argument("field shape mismatch");
    m += p.components();
    real = real && p.is_real();
  }
  SpectralField out(parts.front().grid(), m, real);
  int c = 0;
  for (const auto& p : parts) {
    for (int j = 0; j < p.components(); ++j, ++c) {
      auto src = p.component(j);
      std::copy(src.begin(), src.end(), out.component(c).begin());
    }
  }
  return out;
}

ComplexPair::ComplexPair(SpectralField r, SpectralField i) : re(std::move(r)), im(std::move(i)) {
  if (re.grid() != im.grid() || re.components() != im.components()) {
    throw std::invalid_argument("complex pair parts differ in shape");
  }
}

std::vector<double> magnitude(const PointField& f) {
  const std::size_t n = f.grid.size();
  std::vector<double> sq(n, 0.0);
  for (int c = 0; c < f.components; ++c) {
    auto v = f.component(c);
    simd::mul_add(sq, v, v);
  }
  for (auto& s : sq) s = std::sqrt(s);
  return sq;
}

}  // namespace osc
