#pragma once

#include <array>
#include <cstdint>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "osc/iteration/solver.hpp"

namespace osc::cli {

// Initial velocity. Vorticity runs start from its curl unless a file is given,
// in which case the file holds the vorticity itself.
struct InitialSpec {
  std::string kind = "taylor_green";  // taylor_green | random | file
  double amplitude = 1e-3;
  int band_lo = 1;  // random: lattice index shell range
  int band_hi = 4;
  std::string path;  // file
  // Optional divergence-free white-band perturbation added on top.
  double perturbation = 0.0;
  int perturbation_lo = 2;
  int perturbation_hi = 12;
};

struct ForcingConfig {
  std::string kind = "none";  // none | mode | file
  double amplitude = 0.0;
  int mode = 1;  // f = amplitude sin(mode x_2) e_1
  std::string path;
  std::string g_path;  // optional user-supplied extension partner
  double delta_f = 1.0;
};

struct ProbeConfig {
  std::vector<double> radius_times{0.01, 0.04, 0.16};
  // Radii of the domain-norm probe as multiples of t^{1/2} Phi2(t).
  std::vector<double> domain_scales{0.25, 0.5};
};

struct RunConfig {
  std::string mode = "velocity";  // velocity | vorticity
  int dim = 2;
  int points = 64;
  double length = 0.0;  // 0: 2 pi
  double T = 1.0;
  int snapshots = 64;
  double first = 1e-3;
  std::array<double, 3> alpha{};
  double p = 2.0;
  int max_iterations = 40;
  double tolerance = 1e-10;
  // Monitor-bound and shift-bound constant; unset uses the calibrated C_iter.
  std::optional<double> C;
  std::string calibration;  // empty: default path
  InitialSpec initial;
  ForcingConfig forcing;
  ProbeConfig probe;
  // Seed of the random initial data and perturbations.
  std::uint64_t seed = 7;

  nlohmann::json to_json() const;
};

// Full defaulting; unknown keys and invalid values raise ConfigError.
RunConfig parse_run_config(const nlohmann::json& j);
// A path to a JSON file, or the name of a preset in configs/.
RunConfig load_run_config(const std::string& path_or_preset);
std::vector<std::string> preset_names();

SpectralField build_initial(const RunConfig& config);
ForcingSpec build_forcing(const RunConfig& config);
// Snapshot grid including the probe times.
std::vector<double> build_times(const RunConfig& config);
IterationConfig build_iteration_config(const RunConfig& config, double C);

}  // namespace osc::cli
