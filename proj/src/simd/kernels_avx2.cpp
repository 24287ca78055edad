#include "osc/simd/kernels.hpp"

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace osc::simd {
namespace detail {
namespace {

// [s0, s1] -> [s0, s0, s1, s1], matching the interleaved re/im layout.
inline __m256d widen_pair(const double* s) {
  const __m256d v = _mm256_castpd128_pd256(_mm_loadu_pd(s));
  return _mm256_permute4x64_pd(v, 0x50);
}

void scale_real(cplx* x, const double* s, std::size_t n) {
  double* p = reinterpret_cast<double*>(x);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(p + 2 * i);
    _mm256_storeu_pd(p + 2 * i, _mm256_mul_pd(v, widen_pair(s + i)));
  }
  for (; i < n; ++i) x[i] *= s[i];
}

void axpy_real(cplx* y, const double* w, const cplx* x, std::size_t n) {
  double* py = reinterpret_cast<double*>(y);
  const double* px = reinterpret_cast<const double*>(x);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d vy = _mm256_loadu_pd(py + 2 * i);
    const __m256d vx = _mm256_loadu_pd(px + 2 * i);
    _mm256_storeu_pd(py + 2 * i, _mm256_fmadd_pd(widen_pair(w + i), vx, vy));
  }
  for (; i < n; ++i) y[i] += w[i] * x[i];
}

void exp_step(cplx* y, const double* decay, const double* wa, const cplx* a, const double* wb,
              const cplx* b, std::size_t n) {
  double* py = reinterpret_cast<double*>(y);
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d acc = _mm256_mul_pd(widen_pair(decay + i), _mm256_loadu_pd(py + 2 * i));
    acc = _mm256_fmadd_pd(widen_pair(wa + i), _mm256_loadu_pd(pa + 2 * i), acc);
    acc = _mm256_fmadd_pd(widen_pair(wb + i), _mm256_loadu_pd(pb + 2 * i), acc);
    _mm256_storeu_pd(py + 2 * i, acc);
  }
  for (; i < n; ++i) y[i] = decay[i] * y[i] + wa[i] * a[i] + wb[i] * b[i];
}

void mul(double* out, const double* a, const double* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

void mul_add(double* out, const double* a, const double* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d o = _mm256_loadu_pd(out + i);
    _mm256_storeu_pd(out + i, _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), o));
  }
  for (; i < n; ++i) out[i] += a[i] * b[i];
}

double max_abs(const double* x, std::size_t n) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d m = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) m = _mm256_max_pd(m, _mm256_andnot_pd(sign, _mm256_loadu_pd(x + i)));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, m);
  double r = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
  for (; i < n; ++i) r = std::max(r, std::abs(x[i]));
  return r;
}

double sum_squares(const double* x, std::size_t n) {
  __m256d a0 = _mm256_setzero_pd();
  __m256d a1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d v0 = _mm256_loadu_pd(x + i);
    const __m256d v1 = _mm256_loadu_pd(x + i + 4);
    a0 = _mm256_fmadd_pd(v0, v0, a0);
    a1 = _mm256_fmadd_pd(v1, v1, a1);
  }
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    a0 = _mm256_fmadd_pd(v, v, a0);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, _mm256_add_pd(a0, a1));
  double r = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) r += x[i] * x[i];
  return r;
}

const KernelTable kAvx2{"avx2", scale_real, axpy_real, exp_step, mul, mul_add, max_abs, sum_squares};

}  // namespace

const KernelTable& avx2_table() { return kAvx2; }

}  // namespace detail
}  // namespace osc::simd
