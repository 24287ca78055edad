#pragma once

// Arithmetic inner loops shared by the spectral operators, the Duhamel
// integrators and the norm reductions. Every kernel has a scalar reference
// implementation; an AVX2/FMA variant is compiled separately and selected at
// runtime when the CPU supports it. Set OSC_SIMD=scalar to force the
// reference path.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace osc::simd {

using cplx = std::complex<double>;

struct KernelTable {
  std::string_view name;
  // x[i] *= s[i]
  void (*scale_real)(cplx* x, const double* s, std::size_t n);
  // y[i] += w[i] * x[i]
  void (*axpy_real)(cplx* y, const double* w, const cplx* x, std::size_t n);
  // y[i] = decay[i] * y[i] + wa[i] * a[i] + wb[i] * b[i]
  void (*exp_step)(cplx* y, const double* decay, const double* wa, const cplx* a,
                   const double* wb, const cplx* b, std::size_t n);
  // out[i] = a[i] * b[i]
  void (*mul)(double* out, const double* a, const double* b, std::size_t n);
  // out[i] += a[i] * b[i]
  void (*mul_add)(double* out, const double* a, const double* b, std::size_t n);
  double (*max_abs)(const double* x, std::size_t n);
  double (*sum_squares)(const double* x, std::size_t n);
};

const KernelTable& scalar_kernels();

// nullptr when the build or the running CPU lacks AVX2+FMA.
const KernelTable* avx2_kernels();

// The table used by the library. Resolved once on first use.
const KernelTable& active_kernels();

inline void scale_real(std::span<cplx> x, std::span<const double> s) {
  active_kernels().scale_real(x.data(), s.data(), x.size());
}
inline void axpy_real(std::span<cplx> y, std::span<const double> w, std::span<const cplx> x) {
  active_kernels().axpy_real(y.data(), w.data(), x.data(), y.size());
}
inline void exp_step(std::span<cplx> y, std::span<const double> decay, std::span<const double> wa,
                     std::span<const cplx> a, std::span<const double> wb, std::span<const cplx> b) {
  active_kernels().exp_step(y.data(), decay.data(), wa.data(), a.data(), wb.data(), b.data(),
                            y.size());
}
inline void mul(std::span<double> out, std::span<const double> a, std::span<const double> b) {
  active_kernels().mul(out.data(), a.data(), b.data(), out.size());
}
inline void mul_add(std::span<double> out, std::span<const double> a, std::span<const double> b) {
  active_kernels().mul_add(out.data(), a.data(), b.data(), out.size());
}
inline double max_abs(std::span<const double> x) {
  return active_kernels().max_abs(x.data(), x.size());
}
inline double sum_squares(std::span<const double> x) {
  return active_kernels().sum_squares(x.data(), x.size());
}

}  // namespace osc::simd
