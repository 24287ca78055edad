#pragma once

#include <vector>

#include "osc/iteration/solver.hpp"

namespace osc::detail {

// Monitors of the state's iterate; fills the recovered velocities in
// vorticity mode.
Monitors velocity_monitors(const IterationState& state);
Monitors vorticity_monitors(IterationState& state, double p);

// Mode sources per snapshot, computed in parallel.
std::vector<ComplexPair> mode_sources(Mode mode, const std::vector<SpectralField>& re,
                                      const std::vector<SpectralField>& im, double* pressure_defect);

}  // namespace osc::detail
