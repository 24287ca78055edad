#pragma once

#include <json.hpp>
#include <map>
#include <string>
#include <vector>

#include "osc/verify/bounds.hpp"
#include "osc/verify/corpus.hpp"

namespace osc {

// One lemma run on one corpus.
struct SuiteEntry {
  std::string lemma;
  CorpusConfig corpus;
};

// 2D corpus at N = 64 (band 8) for every lemma, plus 3D spot checks at N = 32
// (band 8) for cz-orlicz and velocity-recovery.
std::vector<SuiteEntry> default_suite();
// Entries of the default suite for one lemma id; throws std::invalid_argument
// for unknown ids.
std::vector<SuiteEntry> suite_for(const std::string& lemma);

// Frozen constants, keyed "<lemma>@d<dim>/<quantity>".
struct Calibration {
  int version = 1;
  std::map<std::string, double> constants;
  std::map<std::string, CorpusConfig> corpora;  // "d2", "d3"
  // Iteration constant: 1.5 x the largest semigroup ratio.
  double C_iter = 1.0;
  // Recovered-velocity constant from the 3D corpus.
  double velocity_recovery = 0.0;

  nlohmann::json to_json() const;
  // Throws ConfigError on a malformed document.
  static Calibration from_json(const nlohmann::json& j);
};

std::string calibration_key(const std::string& lemma, int dim, const std::string& quantity);

// OSC_CALIBRATION when set, else the calibration file shipped in data/.
std::string default_calibration_path();
// Throws ConfigError when the file is missing or corrupt.
Calibration load_calibration(const std::string& path);
void save_calibration(const std::string& path, const Calibration& cal);

// Stores every quantity's max ratio.
void record(Calibration& cal, const BoundReport& report, int dim);
// Recomputes C_iter and velocity_recovery from the stored constants.
void finalize(Calibration& cal);
// Marks each quantity against its frozen constant (x 1.05). Quantities without
// a constant fail.
void apply(const Calibration& cal, BoundReport& report, int dim);

}  // namespace osc
