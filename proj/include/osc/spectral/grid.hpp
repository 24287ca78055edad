#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

namespace osc {

// Per-mode lookup tables shared by every copy of a Grid. Index arrays are in
// flat row-major order, last axis fastest (FFTW order).
struct GridTables {
  std::array<std::vector<int>, 3> index;     // signed lattice index per axis, in [-N/2, N/2)
  std::array<std::vector<double>, 3> k;      // wavenumber per axis
  std::vector<double> k2;                    // |k|^2
  std::vector<double> kabs;                  // |k|
  std::vector<std::uint8_t> nyquist;         // 1 if any axis index equals -N/2
  std::vector<std::uint8_t> dealias;         // 1 if the mode survives the 2/3 rule
  std::vector<std::size_t> mirror;           // flat index of -k
};

class Grid {
 public:
  // Throws std::invalid_argument unless dim is 2 or 3, points is a power of
  // two no smaller than 8 and length is positive and finite.
  Grid(int dim, int points, double length);

  int dim() const { return dim_; }
  int points() const { return points_; }
  double length() const { return length_; }
  std::size_t size() const { return size_; }
  double dk() const;
  double spacing() const { return length_ / points_; }
  double cell_volume() const;
  double volume() const;
  // Largest |k| on the lattice (corner mode).
  double k_max() const;

  const GridTables& tables() const { return *tables_; }
  const std::vector<double>& k(int axis) const { return tables_->k[axis]; }
  const std::vector<double>& k2() const { return tables_->k2; }
  const std::vector<double>& kabs() const { return tables_->kabs; }

  // Grid-point coordinate index of a flat point index along an axis.
  int coord(std::size_t flat, int axis) const;
  std::size_t flat(const std::array<int, 3>& idx) const;
  // Flat index of the mode with the given signed lattice indices.
  std::size_t mode(const std::array<int, 3>& idx) const;

  bool operator==(const Grid& o) const {
    return dim_ == o.dim_ && points_ == o.points_ && length_ == o.length_;
  }
  bool operator!=(const Grid& o) const { return !(*this == o); }

 private:
  int dim_;
  int points_;
  double length_;
  std::size_t size_;
  std::shared_ptr<const GridTables> tables_;
};

Grid make_grid(int dim, int points, double length);

}  // namespace osc
