#pragma once

#include <algorithm>
#include <cstdint>
#include <json.hpp>
#include <numbers>
#include <string>
#include <vector>

#include "osc/spaces/norm_report.hpp"
#include "osc/spectral/field.hpp"

namespace osc {

struct CorpusConfig {
  int dim = 2;
  int points = 64;
  double length = 2.0 * std::numbers::pi;
  std::uint64_t seed = 12345;
  // Highest lattice index used by band-limited members; 0 picks points / 8.
  // Fixing it keeps the corpus identical across resolutions.
  int band = 0;

  int resolved_band() const { return band > 0 ? band : std::max(4, points / 8); }
  nlohmann::json to_json() const;
  static CorpusConfig from_json(const nlohmann::json& j);
};

struct CorpusMember {
  std::string name;
  std::string family;
  SpectralField field;  // real scalar field
  NormReport report;
};

// Families: constant, single modes across shells, seeded random band-limited
// fields, truncated-log profiles, smoothed indicators and white-band noise.
// Every member is a fixed continuum function sampled on the grid, so the same
// config at a finer grid gives the same functions.
struct TestCorpus {
  CorpusConfig config;
  std::vector<CorpusMember> members;
};

TestCorpus build_corpus(const CorpusConfig& config);

// Random phases, unit amplitude on lattice modes with index norm in [lo, hi].
SpectralField white_band(const Grid& grid, int lo, int hi, std::uint64_t seed);

}  // namespace osc
