#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "osc/spectral/grid.hpp"

namespace osc {

using cplx = std::complex<double>;

// Fourier coefficients of an m-component periodic field, component-major.
// The reality flag promises u(-k) = conj(u(k)) for every mode.
class SpectralField {
 public:
  SpectralField(const Grid& grid, int components, bool real = true);

  const Grid& grid() const { return grid_; }
  int components() const { return components_; }
  bool is_real() const { return real_; }
  void set_real(bool real) { real_ = real; }

  std::span<cplx> component(int c) {
    return {coeffs_.data() + static_cast<std::size_t>(c) * grid_.size(), grid_.size()};
  }
  std::span<const cplx> component(int c) const {
    return {coeffs_.data() + static_cast<std::size_t>(c) * grid_.size(), grid_.size()};
  }
  std::vector<cplx>& data() { return coeffs_; }
  const std::vector<cplx>& data() const { return coeffs_; }

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(double s);
  // this += s * o
  SpectralField& axpy(double s, const SpectralField& o);
  void set_zero();

  // Largest coefficient magnitude over all components.
  double max_abs() const;
  // max |u(-k) - conj(u(k))| over all modes and components.
  double reality_defect() const;
  // Replaces u(k) by (u(k) + conj(u(-k)))/2 and sets the reality flag.
  void symmetrize();

 private:
  void check_compatible(const SpectralField& o) const;

  Grid grid_;
  int components_;
  bool real_;
  std::vector<cplx> coeffs_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double s, SpectralField a);

// Selects a single component as a scalar field.
SpectralField component_of(const SpectralField& f, int c);
// Stacks scalar fields into one vector field.
SpectralField stack(const std::vector<SpectralField>& parts);

// Real point values, component-major, flat row-major per component.
struct PointField {
  Grid grid;
  int components;
  std::vector<double> values;

  PointField(const Grid& g, int m) : grid(g), components(m), values(g.size() * m, 0.0) {}
  std::span<double> component(int c) { return {values.data() + c * grid.size(), grid.size()}; }
  std::span<const double> component(int c) const {
    return {values.data() + c * grid.size(), grid.size()};
  }
};

struct ComplexPointField {
  Grid grid;
  int components;
  std::vector<cplx> values;

  ComplexPointField(const Grid& g, int m) : grid(g), components(m), values(g.size() * m) {}
  std::span<cplx> component(int c) { return {values.data() + c * grid.size(), grid.size()}; }
  std::span<const cplx> component(int c) const {
    return {values.data() + c * grid.size(), grid.size()};
  }
};

// Complexified field (real part, imaginary part); both parts are real fields.
struct ComplexPair {
  SpectralField re;
  SpectralField im;

  ComplexPair(SpectralField r, SpectralField i);
  ComplexPair(const Grid& grid, int components)
      : re(grid, components), im(grid, components) {}
};

// Pointwise Euclidean magnitude of a vector point field.
std::vector<double> magnitude(const PointField& f);

}  // namespace osc
