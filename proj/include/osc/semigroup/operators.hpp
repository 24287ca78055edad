#pragma once

#include <span>
#include <string>
#include <vector>

#include "osc/spectral/field.hpp"

namespace osc {

// Fourier multiplier with a scalar complex symbol, applied to every component.
struct MultiplierOp {
  std::string tag;
  std::vector<cplx> symbol;
  // True for symbols odd in k; these zero the Nyquist modes so real fields
  // stay real.
  bool odd = false;

  SpectralField apply(const SpectralField& f) const;
};

// e^{t Delta}: symbol e^{-t|k|^2}. Throws for t < 0.
SpectralField heat_apply(const SpectralField& f, double t);
// (-Delta)^alpha e^{t Delta}: symbol |k|^{2 alpha} e^{-t|k|^2}. Needs t > 0, alpha > 0.
SpectralField frac_heat_apply(const SpectralField& f, double t, double alpha);

// Derivatives. Odd symbols zero every Nyquist mode.
SpectralField partial(const SpectralField& f, int axis);
// m components in, m*d out, ordered c*d + axis.
SpectralField gradient(const SpectralField& f);
SpectralField divergence(const SpectralField& u);
// d = 3: vector curl. d = 2: scalar curl d1 u2 - d2 u1.
SpectralField curl(const SpectralField& u);
SpectralField laplacian(const SpectralField& f);
// (alpha . grad) f, componentwise.
SpectralField directional_derivative(const SpectralField& f, std::span<const double> alpha);

// Symbol delta_jl - k_j k_l / |k|^2; the mean mode passes through.
SpectralField leray_project(const SpectralField& u);

// 2/3 rule: zero every mode with some |index| > N/3.
void dealias_inplace(SpectralField& f);
SpectralField dealias(SpectralField f);

// Alias-free pseudo-spectral tensor (a_i b_j)^ with d*d components, i*d + j.
// Inputs are truncated before the product and the output after it.
SpectralField flux_tensor(const SpectralField& a, const SpectralField& b);
// Divergence of a d*d tensor: (sum_j d_j T_ij)_i.
SpectralField tensor_divergence(const SpectralField& t);

// (a . grad) b, pseudo-spectral with 2/3 dealiasing. Warns when a is not
// divergence-free.
SpectralField advect(const SpectralField& a, const SpectralField& b);
// div(a (x) b), equal to advect(a, b) when div a = 0.
SpectralField advect_divergence_form(const SpectralField& a, const SpectralField& b);

struct PressurePair {
  SpectralField pi;
  SpectralField r;
};
// Pi = -Delta^{-1} d_j d_l (U_j U_l - V_j V_l), R = -2 Delta^{-1} d_j d_l (U_j V_l),
// mean modes set to zero.
PressurePair pressure_pair(const SpectralField& u, const SpectralField& v);
// Same from precomputed flux tensors A = UU - VV and B = UV.
PressurePair pressure_from_fluxes(const SpectralField& a, const SpectralField& b);

// u = i k x W / |k|^2 (d = 3 only); mean mode set to zero.
SpectralField biot_savart(const SpectralField& w);

}  // namespace osc
