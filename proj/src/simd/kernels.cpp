#include "osc/simd/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace osc::simd {

#if defined(OSC_HAVE_AVX2)
namespace detail {
const KernelTable& avx2_table();
}
#endif

namespace {

void scale_real_ref(cplx* x, const double* s, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= s[i];
}

void axpy_real_ref(cplx* y, const double* w, const cplx* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += w[i] * x[i];
}

void exp_step_ref(cplx* y, const double* decay, const double* wa, const cplx* a,
                  const double* wb, const cplx* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = decay[i] * y[i] + wa[i] * a[i] + wb[i] * b[i];
}

void mul_ref(double* out, const double* a, const double* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void mul_add_ref(double* out, const double* a, const double* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] += a[i] * b[i];
}

double max_abs_ref(const double* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(x[i]));
  return m;
}

double sum_squares_ref(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * x[i];
  return s;
}

const KernelTable kScalar{"scalar",  scale_real_ref, axpy_real_ref, exp_step_ref,
                          mul_ref,   mul_add_ref,    max_abs_ref,   sum_squares_ref};

bool cpu_has_avx2() {
#if defined(__GNUC__) && (defined(__x86_64__) || defined(__i386__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable& resolve() {
  if (const char* env = std::getenv("OSC_SIMD"); env != nullptr && std::string(env) == "scalar") {
    return kScalar;
  }
  if (const KernelTable* t = avx2_kernels()) return *t;
  return kScalar;
}

}  // namespace

const KernelTable& scalar_kernels() { return kScalar; }

const KernelTable* avx2_kernels() {
#if defined(OSC_HAVE_AVX2)
  static const bool supported = cpu_has_avx2();
  return supported ? &detail::avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active_kernels() {
  static const KernelTable& table = resolve();
  return table;
}

}  // namespace osc::simd
