#include "osc/verify/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "osc/errors.hpp"
#include "osc/util/log.hpp"

namespace osc {
namespace {

CorpusConfig corpus(int dim, int points, int band = 0) {
  CorpusConfig c;
  c.dim = dim;
  c.points = points;
  c.band = band;
  return c;
}

double max_with_prefix(const Calibration& cal, const std::string& prefix) {
  double m = 0.0;
  for (const auto& [k, v] : cal.constants) {
    if (k.rfind(prefix, 0) == 0) m = std::max(m, v);
  }
  return m;
}

}  // namespace

std::vector<SuiteEntry> default_suite() {
  std::vector<SuiteEntry> s;
  for (const auto& id : lemma_ids()) {
    if (id != "velocity-recovery") s.push_back({id, corpus(2, 64)});
  }
  // The 3D spot checks keep band 8 so the corpus still has 40+ members.
  s.push_back({"cz-orlicz", corpus(3, 32, 8)});
  s.push_back({"velocity-recovery", corpus(3, 32, 8)});
  return s;
}

std::vector<SuiteEntry> suite_for(const std::string& lemma) {
  std::vector<SuiteEntry> out;
  for (auto& e : default_suite()) {
    if (e.lemma == lemma) out.push_back(e);
  }
  if (out.empty()) throw std::invalid_argument("unknown lemma id: " + lemma);
  return out;
}

std::string calibration_key(const std::string& lemma, int dim, const std::string& quantity) {
  return lemma + "@d" + std::to_string(dim) + "/" + quantity;
}

nlohmann::json Calibration::to_json() const {
  nlohmann::json c = nlohmann::json::object();
  for (const auto& [k, v] : corpora) c[k] = v.to_json();
  return {{"version", version},
          {"C_iter", C_iter},
          {"velocity_recovery", velocity_recovery},
          {"corpora", c},
          {"constants", constants}};
}

Calibration Calibration::from_json(const nlohmann::json& j) {
  try {
    Calibration cal;
    cal.version = j.at("version").get<int>();
    cal.C_iter = j.at("C_iter").get<double>();
    cal.velocity_recovery = j.at("velocity_recovery").get<double>();
    for (const auto& [k, v] : j.at("corpora").items()) cal.corpora[k] = CorpusConfig::from_json(v);
    cal.constants = j.at("constants").get<std::map<std::string, double>>();
    if (cal.version != 1) throw ConfigError("unsupported calibration version");
    if (!(cal.C_iter > 0.0)) throw ConfigError("calibration C_iter must be positive");
    for (const auto& [k, v] : cal.constants) {
      if (!std::isfinite(v) || v < 0.0) throw ConfigError("calibration constant " + k + " is not finite");
    }
    return cal;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed calibration: ") + e.what());
  }
}

std::string default_calibration_path() {
  if (const char* env = std::getenv("OSC_CALIBRATION"); env && *env) return env;
  return OSC_DEFAULT_CALIBRATION;
}

Calibration load_calibration(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("calibration file not found: " + path + " (run `osc verify --all --calibrate`)");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("corrupt calibration file " + path + ": " + e.what());
  }
  return Calibration::from_json(j);
}

void save_calibration(const std::string& path, const Calibration& cal) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write calibration file: " + path);
  out << cal.to_json().dump(2) << "\n";
}

void record(Calibration& cal, const BoundReport& report, int dim) {
  for (const auto& [q, s] : report.quantities) cal.constants[calibration_key(report.lemma, dim, q)] = s.max_ratio;
}

void finalize(Calibration& cal) {
  double c = 0.0;
  c = std::max(c, max_with_prefix(cal, "semigroup-bmo@d2/BMO.sum"));
  c = std::max(c, max_with_prefix(cal, "semigroup-bmo@d2/bmo.sum"));
  c = std::max(c, max_with_prefix(cal, "frac-heat@d2/"));
  c = std::max(c, max_with_prefix(cal, "embeddings@d2/"));
  cal.C_iter = c > 0.0 ? 1.5 * c : 1.0;
  cal.velocity_recovery = max_with_prefix(cal, "velocity-recovery@d3/");
}

void apply(const Calibration& cal, BoundReport& report, int dim) {
  for (auto& [q, s] : report.quantities) {
    const auto it = cal.constants.find(calibration_key(report.lemma, dim, q));
    if (it == cal.constants.end()) {
      s.has_frozen = false;
      s.pass = false;
      log().warn("no frozen constant for {}", calibration_key(report.lemma, dim, q));
      continue;
    }
    s.has_frozen = true;
    s.frozen = it->second;
    s.pass = s.max_ratio <= kCalibrationSlack * s.frozen;
  }
}

}  // namespace osc
