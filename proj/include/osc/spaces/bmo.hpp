#pragma once

#include <span>

#include "osc/spectral/field.hpp"

namespace osc {

// Cube family: sides of N, N/2, ..., 4 cells, placed at multiples of the side
// and translated diagonally by 0, s/4, s/2 and 3s/4 cells (periodic wrap).
// Oscillation of a vector field is measured with |f - f_Q| Euclidean.
struct BmoParts {
  double oscillation_all = 0.0;    // sup over the whole family (BMO)
  double oscillation_small = 0.0;  // sup over cubes of side <= 1
  double mean_unit = 0.0;          // sup |f_Q| over unit-scale cubes
  int unit_side_cells = 0;         // side of the unit-scale cubes, in cells
};

// Unit scale is the largest dyadic side not exceeding 1; when every cube is
// larger than 1 the smallest available side stands in for both the small
// cubes and the unit cubes.
BmoParts bmo_parts(const PointField& f);
BmoParts bmo_parts(const SpectralField& f);

// local = false: BMO seminorm. local = true: bmo norm
// (small-cube oscillation plus unit-cube means).
double bmo_norm(const SpectralField& f, bool local);
double bmo_norm(const PointField& f, bool local);

// Mean oscillation of one cube (side cells, origin cells, periodic wrap).
double cube_oscillation(const PointField& f, const int origin[3], int side, double* mean_norm);

}  // namespace osc
