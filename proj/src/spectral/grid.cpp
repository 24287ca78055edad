#include "osc/spectral/grid.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <tuple>

namespace osc {
namespace {

std::shared_ptr<const GridTables> build_tables(int dim, int n, double length) {
  auto t = std::make_shared<GridTables>();
  std::size_t size = 1;
  for (int a = 0; a < dim; ++a) size *= static_cast<std::size_t>(n);
  const double dk = 2.0 * std::numbers::pi / length;
  for (int a = 0; a < 3; ++a) {
    t->index[a].assign(size, 0);
    t->k[a].assign(size, 0.0);
  }
  t->k2.assign(size, 0.0);
  t->kabs.assign(size, 0.0);
  t->nyquist.assign(size, 0);
  t->dealias.assign(size, 1);
  t->mirror.assign(size, 0);

  const int cutoff = n / 3;
  for (std::size_t f = 0; f < size; ++f) {
    std::size_t rem = f;
    std::size_t mirror = 0;
    std::array<int, 3> raw{0, 0, 0};
    for (int a = dim - 1; a >= 0; --a) {
      raw[a] = static_cast<int>(rem % n);
      rem /= n;
    }
    double k2 = 0.0;
    for (int a = 0; a < dim; ++a) {
      const int i = raw[a] < n / 2 ? raw[a] : raw[a] - n;
      t->index[a][f] = i;
      t->k[a][f] = dk * i;
      k2 += t->k[a][f] * t->k[a][f];
      if (i == -n / 2) t->nyquist[f] = 1;
      if (std::abs(i) > cutoff) t->dealias[f] = 0;
      mirror = mirror * n + static_cast<std::size_t>((n - raw[a]) % n);
    }
    t->k2[f] = k2;
    t->kabs[f] = std::sqrt(k2);
    t->mirror[f] = mirror;
  }
  return t;
}

std::shared_ptr<const GridTables> cached_tables(int dim, int n, double length) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, double>, std::shared_ptr<const GridTables>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{dim, n, length}];
  if (!slot) slot = build_tables(dim, n, length);
  return slot;
}

}  // namespace

Grid::Grid(int dim, int points, double length) : dim_(dim), points_(points), length_(length) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("grid dimension must be 2 or 3");
  if (points < 8 || (points & (points - 1)) != 0) {
    throw std::invalid_argument("points per axis must be a power of two >= 8, got " +
                                std::to_string(points));
  }
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw std::invalid_argument("period must be positive and finite");
  }
  size_ = 1;
  for (int a = 0; a < dim; ++a) size_ *= static_cast<std::size_t>(points);
  tables_ = cached_tables(dim, points, length);
}

double Grid::dk() const { return 2.0 * std::numbers::pi / length_; }

double Grid::cell_volume() const { return std::pow(spacing(), dim_); }

double Grid::volume() const { return std::pow(length_, dim_); }

double Grid::k_max() const { return dk() * (points_ / 2) * std::sqrt(static_cast<double>(dim_)); }

int Grid::coord(std::size_t flat, int axis) const {
  for (int a = dim_ - 1; a > axis; --a) flat /= points_;
  return static_cast<int>(flat % points_);
}

std::size_t Grid::flat(const std::array<int, 3>& idx) const {
  std::size_t f = 0;
  for (int a = 0; a < dim_; ++a) {
    const int i = ((idx[a] % points_) + points_) % points_;
    f = f * points_ + static_cast<std::size_t>(i);
  }
  return f;
}

std::size_t Grid::mode(const std::array<int, 3>& idx) const { return flat(idx); }

Grid make_grid(int dim, int points, double length) { return Grid(dim, points, length); }

}  // namespace osc
