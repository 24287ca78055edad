#pragma once

#include "osc/iteration/solver.hpp"

namespace osc {

// Largest deviation max|curl U - W| / max|W| over common snapshot times of a
// velocity run and a vorticity run on the same grid and time grid.
double curl_consistency(const IterationState& velocity, const IterationState& vorticity);

}  // namespace osc
