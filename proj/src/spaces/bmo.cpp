#include "osc/spaces/bmo.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "osc/spectral/transform.hpp"

namespace osc {
namespace {

void cube_indices(const Grid& g, const int origin[3], int side, std::vector<std::size_t>& out) {
  const int n = g.points();
  out.clear();
  if (g.dim() == 2) {
    for (int i = 0; i < side; ++i) {
      const std::size_t row = static_cast<std::size_t>((origin[0] + i) % n) * n;
      for (int j = 0; j < side; ++j) out.push_back(row + (origin[1] + j) % n);
    }
    return;
  }
  for (int i = 0; i < side; ++i) {
    for (int j = 0; j < side; ++j) {
      const std::size_t row =
          (static_cast<std::size_t>((origin[0] + i) % n) * n + (origin[1] + j) % n) * n;
      for (int l = 0; l < side; ++l) out.push_back(row + (origin[2] + l) % n);
    }
  }
}

double oscillation(const PointField& f, const std::vector<std::size_t>& cells, double* mean_norm) {
  const std::size_t n = f.grid.size();
  const double inv = 1.0 / static_cast<double>(cells.size());
  double mean[3] = {0.0, 0.0, 0.0};
  for (int c = 0; c < f.components; ++c) {
    const double* v = f.values.data() + c * n;
    double s = 0.0;
    for (std::size_t idx : cells) s += v[idx];
    mean[c] = s * inv;
  }
  double osc = 0.0;
  if (f.components == 1) {
    const double* v = f.values.data();
    for (std::size_t idx : cells) osc += std::abs(v[idx] - mean[0]);
  } else {
    for (std::size_t idx : cells) {
      double sq = 0.0;
      for (int c = 0; c < f.components; ++c) {
        const double d = f.values[c * n + idx] - mean[c];
        sq += d * d;
      }
      osc += std::sqrt(sq);
    }
  }
  if (mean_norm != nullptr) {
    double sq = 0.0;
    for (int c = 0; c < f.components; ++c) sq += mean[c] * mean[c];
    *mean_norm = std::sqrt(sq);
  }
  return osc * inv;
}

}  // namespace

double cube_oscillation(const PointField& f, const int origin[3], int side, double* mean_norm) {
  std::vector<std::size_t> cells;
  cube_indices(f.grid, origin, side, cells);
  return oscillation(f, cells, mean_norm);
}

BmoParts bmo_parts(const PointField& f) {
  const Grid& g = f.grid;
  const int n = g.points();
  const double h = g.spacing();
  std::vector<int> sides;
  for (int s = n; s >= 4; s /= 2) sides.push_back(s);

  BmoParts parts;
  int unit = 0;
  for (int s : sides) {
    if (s * h <= 1.0 + 1e-12) {
      unit = s;
      break;
    }
  }
  const bool none_small = unit == 0;
  if (none_small) unit = sides.back();
  parts.unit_side_cells = unit;

  std::vector<std::size_t> cells;
  for (int s : sides) {
    const bool small = none_small ? s == unit : s * h <= 1.0 + 1e-12;
    const int per_axis = n / s;
    const int offsets = s == n ? 1 : 4;
    for (int o = 0; o < offsets; ++o) {
      const int shift = o * s / 4;
      const int count = g.dim() == 2 ? per_axis * per_axis : per_axis * per_axis * per_axis;
      for (int q = 0; q < count; ++q) {
        int origin[3] = {0, 0, 0};
        int rem = q;
        for (int a = g.dim() - 1; a >= 0; --a) {
          origin[a] = (rem % per_axis) * s + shift;
          rem /= per_axis;
        }
        cube_indices(g, origin, s, cells);
        double mean = 0.0;
        const double osc = oscillation(f, cells, &mean);
        parts.oscillation_all = std::max(parts.oscillation_all, osc);
        if (small) parts.oscillation_small = std::max(parts.oscillation_small, osc);
        if (s == unit) parts.mean_unit = std::max(parts.mean_unit, mean);
      }
    }
  }
  return parts;
}

BmoParts bmo_parts(const SpectralField& f) { return bmo_parts(inverse(f)); }

double bmo_norm(const PointField& f, bool local) {
  const BmoParts p = bmo_parts(f);
  return local ? p.oscillation_small + p.mean_unit : p.oscillation_all;
}

double bmo_norm(const SpectralField& f, bool local) { return bmo_norm(inverse(f), local); }

}  // namespace osc
