#include "osc/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>

#include "osc/errors.hpp"
#include "osc/semigroup/operators.hpp"
#include "osc/spaces/norms.hpp"
#include "osc/spectral/serialize.hpp"
#include "osc/spectral/transform.hpp"
#include "osc/verify/corpus.hpp"

namespace osc::cli {
namespace {

using nlohmann::json;

// Reads fields of one JSON object and rejects keys nobody asked for.
class Reader {
 public:
  Reader(const json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) throw ConfigError(where_ + " must be an object");
  }
  void done() const {
    for (const auto& [k, v] : j_.items()) {
      if (!seen_.count(k)) throw ConfigError("unknown key " + where_ + "." + k);
    }
  }

  template <class T>
  void get(const char* key, T& out) {
    seen_.insert(key);
    if (!j_.contains(key)) return;
    try {
      out = j_.at(key).get<T>();
    } catch (const json::exception&) {
      throw ConfigError("bad value for " + where_ + "." + key);
    }
  }
  const json* sub(const char* key) {
    seen_.insert(key);
    return j_.contains(key) ? &j_.at(key) : nullptr;
  }

 private:
  const json& j_;
  std::string where_;
  std::set<std::string> seen_;
};

void require(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

std::filesystem::path config_dir() {
  if (const char* env = std::getenv("OSC_CONFIG_DIR"); env && *env) return env;
  return OSC_CONFIG_DIR;
}

SpectralField taylor_green(const Grid& g, double a) {
  const int d = g.dim();
  return forward(sample(g, d, [&](const std::array<double, 3>& x, double* out) {
    const double cz = d == 3 ? std::cos(x[2]) : 1.0;
    out[0] = a * std::sin(x[0]) * std::cos(x[1]) * cz;
    out[1] = -a * std::cos(x[0]) * std::sin(x[1]) * cz;
    if (d == 3) out[2] = 0.0;
  }));
}

// Divergence-free field from white-band components, scaled to sup norm a.
SpectralField solenoidal_band(const Grid& g, int lo, int hi, std::uint64_t seed, double a) {
  std::vector<SpectralField> parts;
  for (int c = 0; c < g.dim(); ++c) parts.push_back(white_band(g, lo, hi, seed + 977 * c));
  SpectralField u = leray_project(stack(parts));
  const double m = linf_norm(u);
  if (m > 0.0) u *= a / m;
  return u;
}

}  // namespace

json RunConfig::to_json() const {
  json j = {{"mode", mode},
            {"dim", dim},
            {"points", points},
            {"length", length > 0.0 ? length : 2.0 * std::numbers::pi},
            {"T", T},
            {"snapshots", snapshots},
            {"first", first},
            {"alpha", std::vector<double>(alpha.begin(), alpha.begin() + dim)},
            {"p", p},
            {"max_iterations", max_iterations},
            {"tolerance", tolerance},
            {"calibration", calibration},
            {"seed", seed}};
  j["C"] = C ? json(*C) : json("calibrated");
  j["initial"] = {{"kind", initial.kind},
                  {"amplitude", initial.amplitude},
                  {"band_lo", initial.band_lo},
                  {"band_hi", initial.band_hi},
                  {"path", initial.path},
                  {"perturbation", initial.perturbation},
                  {"perturbation_lo", initial.perturbation_lo},
                  {"perturbation_hi", initial.perturbation_hi}};
  j["forcing"] = {{"kind", forcing.kind},       {"amplitude", forcing.amplitude}, {"mode", forcing.mode},
                  {"path", forcing.path},       {"g_path", forcing.g_path},       {"delta_f", forcing.delta_f}};
  j["probe"] = {{"radius_times", probe.radius_times}, {"domain_scales", probe.domain_scales}};
  return j;
}

RunConfig parse_run_config(const json& j) {
  RunConfig c;
  {
    Reader r(j, "config");
    r.get("mode", c.mode);
    r.get("dim", c.dim);
    r.get("points", c.points);
    r.get("length", c.length);
    r.get("T", c.T);
    r.get("snapshots", c.snapshots);
    r.get("first", c.first);
    r.get("p", c.p);
    r.get("max_iterations", c.max_iterations);
    r.get("tolerance", c.tolerance);
    r.get("calibration", c.calibration);
    r.get("seed", c.seed);
    if (const json* a = r.sub("alpha")) {
      std::vector<double> v;
      try {
        v = a->get<std::vector<double>>();
      } catch (const json::exception&) {
        throw ConfigError("alpha must be a list of numbers");
      }
      require(v.size() <= 3, "alpha has more than 3 components");
      for (std::size_t i = 0; i < v.size(); ++i) c.alpha[i] = v[i];
    }
    if (const json* cc = r.sub("C")) {
      if (cc->is_number()) {
        c.C = cc->get<double>();
      } else {
        require(cc->is_string() && cc->get<std::string>() == "calibrated", "C must be a number or \"calibrated\"");
      }
    }
    if (const json* s = r.sub("initial")) {
      Reader ri(*s, "initial");
      ri.get("kind", c.initial.kind);
      ri.get("amplitude", c.initial.amplitude);
      ri.get("band_lo", c.initial.band_lo);
      ri.get("band_hi", c.initial.band_hi);
      ri.get("path", c.initial.path);
      ri.get("perturbation", c.initial.perturbation);
      ri.get("perturbation_lo", c.initial.perturbation_lo);
      ri.get("perturbation_hi", c.initial.perturbation_hi);
      ri.done();
    }
    if (const json* s = r.sub("forcing")) {
      Reader rf(*s, "forcing");
      rf.get("kind", c.forcing.kind);
      rf.get("amplitude", c.forcing.amplitude);
      rf.get("mode", c.forcing.mode);
      rf.get("path", c.forcing.path);
      rf.get("g_path", c.forcing.g_path);
      rf.get("delta_f", c.forcing.delta_f);
      rf.done();
    }
    if (const json* s = r.sub("probe")) {
      Reader rp(*s, "probe");
      rp.get("radius_times", c.probe.radius_times);
      rp.get("domain_scales", c.probe.domain_scales);
      rp.done();
    }
    r.done();
  }
  require(c.mode == "velocity" || c.mode == "vorticity", "mode must be velocity or vorticity");
  require(c.dim == 2 || c.dim == 3, "dim must be 2 or 3");
  require(c.points >= 8 && (c.points & (c.points - 1)) == 0, "points must be a power of two >= 8");
  require(c.length >= 0.0 && std::isfinite(c.length), "length must be positive");
  if (c.length == 0.0) c.length = 2.0 * std::numbers::pi;
  require(c.T > 0.0 && std::isfinite(c.T), "T must be positive");
  require(c.snapshots >= 2, "snapshots must be >= 2");
  require(c.first > 0.0 && c.first < 1.0, "first must lie in (0, 1)");
  require(c.max_iterations >= 1, "max_iterations must be >= 1");
  require(c.tolerance > 0.0, "tolerance must be positive");
  if (c.C) require(*c.C > 0.0 && std::isfinite(*c.C), "C must be positive");
  for (int i = c.dim; i < 3; ++i) require(c.alpha[i] == 0.0, "alpha has more components than dim");
  for (double a : c.alpha) require(std::isfinite(a), "alpha must be finite");
  if (c.mode == "vorticity") {
    require(c.dim == 3, "vorticity mode needs dim = 3");
    require(c.p >= 1.0 && c.p < 3.0, "vorticity exponent p must satisfy 1 <= p < 3");
  }
  const auto& in = c.initial;
  require(in.kind == "taylor_green" || in.kind == "random" || in.kind == "file",
          "initial.kind must be taylor_green, random or file");
  require(in.kind != "file" || !in.path.empty(), "initial.path is required for file data");
  require(in.band_lo >= 1 && in.band_hi >= in.band_lo && in.band_hi < c.points / 2, "bad initial band");
  require(in.perturbation >= 0.0, "initial.perturbation must be >= 0");
  require(in.perturbation == 0.0 || (in.perturbation_lo >= 1 && in.perturbation_hi >= in.perturbation_lo &&
                                      in.perturbation_hi < c.points / 2),
          "bad perturbation band");
  const auto& fo = c.forcing;
  require(fo.kind == "none" || fo.kind == "mode" || fo.kind == "file", "forcing.kind must be none, mode or file");
  require(fo.kind != "file" || !fo.path.empty(), "forcing.path is required for file forcing");
  require(fo.mode >= 1 && fo.mode < c.points / 2, "forcing.mode out of range");
  require(fo.delta_f > 0.0, "forcing.delta_f must be positive");
  for (double t : c.probe.radius_times) require(t > 0.0 && t <= c.T, "probe.radius_times must lie in (0, T]");
  for (double s : c.probe.domain_scales) require(s > 0.0, "probe.domain_scales must be positive");
  return c;
}

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  std::error_code ec;
  for (const auto& e : std::filesystem::directory_iterator(config_dir(), ec)) {
    if (e.path().extension() == ".json") out.push_back(e.path().stem().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

RunConfig load_run_config(const std::string& path_or_preset) {
  std::filesystem::path p(path_or_preset);
  if (!std::filesystem::exists(p)) {
    const auto preset = config_dir() / (path_or_preset + ".json");
    if (!std::filesystem::exists(preset)) throw ConfigError("no config file or preset named " + path_or_preset);
    p = preset;
  }
  std::ifstream in(p);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("cannot parse " + p.string() + ": " + e.what());
  }
  return parse_run_config(j);
}

SpectralField build_initial(const RunConfig& c) {
  const Grid g(c.dim, c.points, c.length);
  SpectralField u(g, c.dim);
  const auto& in = c.initial;
  if (in.kind == "file") {
    try {
      u = read_field(in.path);
    } catch (const std::exception& e) {
      throw ConfigError("cannot read initial data: " + std::string(e.what()));
    }
    if (u.grid() != g) throw ConfigError("initial data grid does not match the config");
    return u;
  }
  if (in.kind == "taylor_green") {
    u = taylor_green(g, in.amplitude);
  } else {
    u = solenoidal_band(g, in.band_lo, in.band_hi, c.seed, in.amplitude);
  }
  if (in.perturbation > 0.0) {
    u += solenoidal_band(g, in.perturbation_lo, in.perturbation_hi, c.seed + 1, in.perturbation);
  }
  if (c.mode == "vorticity") return curl(u);
  return u;
}

ForcingSpec build_forcing(const RunConfig& c) {
  ForcingSpec spec;
  spec.delta_f = c.forcing.delta_f;
  const Grid g(c.dim, c.points, c.length);
  const auto& fo = c.forcing;
  auto read = [&](const std::string& path) {
    try {
      return read_field(path);
    } catch (const std::exception& e) {
      throw ConfigError("cannot read forcing: " + std::string(e.what()));
    }
  };
  if (fo.kind == "mode") {
    const double kk = 2.0 * std::numbers::pi / c.length * fo.mode;
    spec.f = forward(sample(g, c.dim, [&](const std::array<double, 3>& x, double* out) {
      for (int i = 0; i < c.dim; ++i) out[i] = 0.0;
      out[0] = fo.amplitude * std::sin(kk * x[1]);
    }));
  } else if (fo.kind == "file") {
    spec.f = read(fo.path);
  }
  if (!fo.g_path.empty()) spec.g = read(fo.g_path);
  validate_forcing(spec, g);
  return spec;
}

std::vector<double> build_times(const RunConfig& c) {
  return snapshot_times(c.T, c.snapshots, c.first, c.probe.radius_times);
}

IterationConfig build_iteration_config(const RunConfig& c, double C) {
  IterationConfig ic(build_initial(c));
  ic.T = c.T;
  ic.times = build_times(c);
  ic.alpha = c.alpha;
  ic.forcing = build_forcing(c);
  ic.mode = c.mode == "vorticity" ? Mode::vorticity : Mode::velocity;
  ic.p = c.p;
  ic.max_iterations = c.max_iterations;
  ic.tolerance = c.tolerance;
  ic.C = C;
  return ic;
}

}  // namespace osc::cli
