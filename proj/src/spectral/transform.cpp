#include "osc/spectral/transform.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace osc {
namespace {

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};
using Buffer = std::unique_ptr<fftw_complex, FftwFree>;

Buffer allocate(std::size_t n) {
  auto* p = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
  if (p == nullptr) throw std::bad_alloc();
  return Buffer(p);
}

// Planning is not thread-safe in FFTW; execution of an existing plan on new
// arrays is. Plans use FFTW_ESTIMATE so the algorithm, and therefore the
// rounding, is identical across runs.
fftw_plan plan_for(const Grid& grid, int sign) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, int>, fftw_plan> plans;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_tuple(grid.dim(), grid.points(), sign);
  auto it = plans.find(key);
  if (it != plans.end()) return it->second;
  int dims[3] = {grid.points(), grid.points(), grid.points()};
  Buffer buf = allocate(grid.size());
  fftw_plan p = fftw_plan_dft(grid.dim(), dims, buf.get(), buf.get(), sign, FFTW_ESTIMATE);
  if (p == nullptr) throw std::runtime_error("FFTW planning failed");
  plans.emplace(key, p);
  return p;
}

void execute(const Grid& grid, int sign, std::span<cplx> data) {
  if (data.size() != grid.size()) throw std::invalid_argument("transform shape mismatch");
  Buffer buf = allocate(grid.size());
  std::copy(data.begin(), data.end(), reinterpret_cast<cplx*>(buf.get()));
  fftw_execute_dft(plan_for(grid, sign), buf.get(), buf.get());
  std::copy_n(reinterpret_cast<const cplx*>(buf.get()), grid.size(), data.begin());
}

}  // namespace

void fft_forward(const Grid& grid, std::span<cplx> data) { execute(grid, FFTW_FORWARD, data); }
void fft_backward(const Grid& grid, std::span<cplx> data) { execute(grid, FFTW_BACKWARD, data); }

SpectralField forward(const PointField& f) {
  const Grid& g = f.grid;
  const std::size_t n = g.size();
  if (f.values.size() != n * f.components) throw std::invalid_argument("point field shape");
  SpectralField out(g, f.components, true);
  const auto& mirror = g.tables().mirror;
  const double scale = 1.0 / static_cast<double>(n);
  std::vector<cplx> work(n);
  // Two real components per complex transform.
  for (int c = 0; c < f.components; c += 2) {
    const bool pair = c + 1 < f.components;
    auto a = f.component(c);
    for (std::size_t i = 0; i < n; ++i) work[i] = cplx(a[i], pair ? f.component(c + 1)[i] : 0.0);
    fft_forward(g, work);
    auto ua = out.component(c);
    if (!pair) {
      for (std::size_t k = 0; k < n; ++k) ua[k] = scale * 0.5 * (work[k] + std::conj(work[mirror[k]]));
      continue;
    }
    auto ub = out.component(c + 1);
    for (std::size_t k = 0; k < n; ++k) {
      const cplx w = work[k];
      const cplx wm = std::conj(work[mirror[k]]);
      ua[k] = scale * 0.5 * (w + wm);
      ub[k] = scale * cplx(0.0, -0.5) * (w - wm);
    }
  }
  return out;
}

SpectralField forward(const ComplexPointField& f) {
  const Grid& g = f.grid;
  if (f.values.size() != g.size() * f.components) throw std::invalid_argument("point field shape");
  SpectralField out(g, f.components, false);
  const double scale = 1.0 / static_cast<double>(g.size());
  for (int c = 0; c < f.components; ++c) {
    auto u = out.component(c);
    auto src = f.component(c);
    std::copy(src.begin(), src.end(), u.begin());
    fft_forward(g, u);
    for (auto& v : u) v *= scale;
  }
  return out;
}

PointField inverse(const SpectralField& f) {
  const Grid& g = f.grid();
  const std::size_t n = g.size();
  PointField out(g, f.components());
  std::vector<cplx> work(n);
  if (!f.is_real()) {
    for (int c = 0; c < f.components(); ++c) {
      auto u = f.component(c);
      std::copy(u.begin(), u.end(), work.begin());
      fft_backward(g, work);
      auto dst = out.component(c);
      for (std::size_t i = 0; i < n; ++i) dst[i] = work[i].real();
    }
    return out;
  }
  const cplx I(0.0, 1.0);
  for (int c = 0; c < f.components(); c += 2) {
    const bool pair = c + 1 < f.components();
    auto ua = f.component(c);
    if (pair) {
      auto ub = f.component(c + 1);
      for (std::size_t k = 0; k < n; ++k) work[k] = ua[k] + I * ub[k];
    } else {
      std::copy(ua.begin(), ua.end(), work.begin());
    }
    fft_backward(g, work);
    auto da = out.component(c);
    for (std::size_t i = 0; i < n; ++i) da[i] = work[i].real();
    if (pair) {
      auto db = out.component(c + 1);
      for (std::size_t i = 0; i < n; ++i) db[i] = work[i].imag();
    }
  }
  return out;
}

ComplexPointField inverse_complex(const SpectralField& f) {
  const Grid& g = f.grid();
  ComplexPointField out(g, f.components());
  for (int c = 0; c < f.components(); ++c) {
    auto src = f.component(c);
    auto dst = out.component(c);
    std::copy(src.begin(), src.end(), dst.begin());
    fft_backward(g, dst);
  }
  return out;
}

ShiftEvaluation evaluate_complex_shift(const SpectralField& f, std::span<const double> y) {
  const Grid& g = f.grid();
  if (static_cast<int>(y.size()) != g.dim()) throw std::invalid_argument("shift dimension");
  const auto& t = g.tables();
  ShiftEvaluation result{ComplexPointField(g, f.components())};
  SpectralField shifted(g, f.components(), false);
  double max_exp = 0.0;
  for (int c = 0; c < f.components(); ++c) {
    auto u = f.component(c);
    auto s = shifted.component(c);
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (u[k] == cplx(0.0, 0.0)) continue;
      double ky = 0.0;
      for (int a = 0; a < g.dim(); ++a) ky += t.k[a][k] * y[a];
      max_exp = std::max(max_exp, std::abs(ky));
      s[k] = u[k] * std::exp(-ky);
    }
  }
  result.max_exponent = max_exp;
  if (max_exp > 700.0) {
    result.overflow = true;
    const double inf = std::numeric_limits<double>::infinity();
    std::fill(result.values.values.begin(), result.values.values.end(), cplx(inf, inf));
    return result;
  }
  result.values = inverse_complex(shifted);
  return result;
}

std::array<double, 3> position(const Grid& grid, std::size_t flat) {
  std::array<double, 3> x{0.0, 0.0, 0.0};
  const double h = grid.spacing();
  for (int a = grid.dim() - 1; a >= 0; --a) {
    x[a] = h * static_cast<double>(flat % grid.points());
    flat /= grid.points();
  }
  return x;
}

PointField sample(const Grid& grid, int components,
                  const std::function<void(const std::array<double, 3>&, double*)>& fn) {
  PointField out(grid, components);
  std::vector<double> buf(components);
  for (std::size_t p = 0; p < grid.size(); ++p) {
    fn(position(grid, p), buf.data());
    for (int c = 0; c < components; ++c) out.values[c * grid.size() + p] = buf[c];
  }
  return out;
}

}  // namespace osc
