#include "osc/cli/commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "osc/cli/config.hpp"
#include "osc/cli/run_dir.hpp"
#include "osc/errors.hpp"
#include "osc/iteration/forcing.hpp"
#include "osc/iteration/solver.hpp"
#include "osc/probe/domain_norms.hpp"
#include "osc/probe/radius.hpp"
#include "osc/spaces/bmo.hpp"
#include "osc/spaces/norms.hpp"
#include "osc/spectral/serialize.hpp"
#include "osc/util/format.hpp"
#include "osc/util/log.hpp"
#include "osc/verify/calibration.hpp"
#include "osc/weights/horizons.hpp"
#include "osc/weights/weights.hpp"

namespace osc::cli {
namespace {

using nlohmann::json;

struct RunOptions {
  std::string config;
  std::string output;
  std::optional<std::uint64_t> seed;
};

std::size_t time_index(const std::vector<double>& times, double t) {
  const auto it = std::min_element(times.begin(), times.end(),
                                   [&](double a, double b) { return std::abs(a - t) < std::abs(b - t); });
  return static_cast<std::size_t>(it - times.begin());
}

std::string default_output(const std::string& config) {
  return (std::filesystem::path("runs") / std::filesystem::path(config).stem()).string();
}

int cmd_run(const RunOptions& opt, Mode expected) {
  RunConfig c = load_run_config(opt.config);
  if (opt.seed) c.seed = *opt.seed;
  const Mode mode = c.mode == "vorticity" ? Mode::vorticity : Mode::velocity;
  if (mode != expected) {
    throw ConfigError(std::string("config mode is ") + c.mode + "; use " +
                      (mode == Mode::velocity ? "run-nse" : "run-vorticity"));
  }
  RunDirectory dir(opt.output.empty() ? default_output(opt.config) : opt.output,
                   expected == Mode::velocity ? "run-nse" : "run-vorticity", c.to_json());
  if (std::filesystem::exists(opt.config)) dir.add_input(opt.config);
  if (!c.initial.path.empty()) dir.add_input(c.initial.path);
  if (!c.forcing.path.empty()) dir.add_input(c.forcing.path);
  if (!c.forcing.g_path.empty()) dir.add_input(c.forcing.g_path);

  std::optional<Calibration> cal;
  double C = 0.0;
  if (c.C) {
    C = *c.C;
  } else {
    const std::string path = c.calibration.empty() ? default_calibration_path() : c.calibration;
    cal = load_calibration(path);
    dir.set_calibration(path);
    C = cal->C_iter;
  }
  const IterationConfig ic = build_iteration_config(c, C);

  const double sb = weights::shift_bound(c.T, C);
  if (ic.alpha_norm() > sb) {
    throw ConfigError("|alpha| = " + fmt17(ic.alpha_norm()) + " exceeds the shift bound 1/(2C sup t^{1/2} psi2(t)) = " +
                      fmt17(sb) + " for T = " + fmt17(c.T) + ", C = " + fmt17(C));
  }
  weights::HorizonInput hin;
  hin.C = C;
  hin.gamma = forcing_level(ic.forcing);
  weights::HorizonResult horizon;
  if (mode == Mode::velocity) {
    hin.u0_bmo = bmo_norm(ic.initial, true);
    horizon = weights::horizon_tstar(hin);
  } else {
    hin.p = c.p;
    hin.w0_bmo = bmo_norm(ic.initial, true);
    hin.w0_lp = lp_norm(ic.initial, c.p);
    horizon = weights::horizon_tomega(hin);
  }
  if (c.T > horizon.T) {
    const std::string msg = "T = " + fmt17(c.T) + " exceeds the existence horizon " + fmt17(horizon.T);
    log().warn("{}", msg);
    dir.warn("beyond_horizon", msg);
  }

  auto observer = [](const IterationState& s) {
    const Monitors& m = s.history.back();
    log().info("iterate {}: M = {:.6e}, diff = {:.6e}", m.n, m.max, m.diff);
  };
  std::optional<std::pair<IterationState, ConvergenceReport>> result;
  try {
    result = mode == Mode::velocity ? run_iteration(ic, observer) : run_vorticity(ic, observer);
  } catch (const DivergenceError& e) {
    json diag = json::parse(e.diagnostics.empty() ? "null" : e.diagnostics, nullptr, false);
    dir.write_json("report.json", {{"verdict", "diverged"}, {"message", e.what()}, {"diagnostics", diag}});
    dir.finish("diverged");
    std::cerr << "diverged: " << e.what() << "\n";
    return kExitDivergence;
  }
  const auto& [state, report] = *result;

  std::vector<RadiusEstimate> radii;
  std::vector<DomainNormRow> domain;
  for (double t : c.probe.radius_times) {
    const std::size_t i = time_index(state.times, t);
    radii.push_back(estimate_radius(state.re[i], state.times[i]));
    std::vector<double> r;
    const double scale = std::sqrt(state.times[i]) * weights::Phi2(state.times[i]);
    for (double s : c.probe.domain_scales) r.push_back(s * scale);
    const auto rows = probe_domain_norms(ComplexPair(state.re[i], state.im[i]), state.times[i], r);
    domain.insert(domain.end(), rows.begin(), rows.end());
  }

  std::vector<std::size_t> keep;
  for (double t : c.probe.radius_times) keep.push_back(time_index(state.times, t));
  keep.push_back(state.times.size() - 1);
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  std::filesystem::create_directories(dir.path("snapshots"));
  json snaps = json::array();
  for (std::size_t i : keep) {
    const std::string stem = "snapshots/t" + std::to_string(i);
    write_field(dir.path(stem + "_re.osf"), state.re[i], false);
    write_field(dir.path(stem + "_im.osf"), state.im[i], false);
    snaps.push_back({{"index", i}, {"t", state.times[i]}, {"re", stem + "_re.osf"}, {"im", stem + "_im.osf"}});
  }

  json rep = report.to_json();
  rep["horizon"] = horizon.to_json();
  // The monitor bound is only guaranteed up to the horizon.
  rep["within_horizon"] = c.T <= horizon.T;
  rep["shift_bound"] = sb;
  rep["C"] = C;
  if (cal) rep["calibration"] = {{"C_iter", cal->C_iter}, {"velocity_recovery", cal->velocity_recovery}};
  json rj = json::array();
  for (const auto& e : radii) rj.push_back(radius_json(e));
  rep["radius"] = rj;
  rep["radius_constant"] = radius_constant(radii);
  rep["radius_nondecreasing"] = radius_nondecreasing(radii);
  rep["domain_sup_weighted_linf"] = domain_sup_weighted_linf(domain);
  rep["snapshots"] = snaps;
  if (mode == Mode::vorticity && cal && cal->velocity_recovery > 0.0) {
    rep["velocity_ratio_ok"] = report.max_velocity_ratio <= kCalibrationSlack * cal->velocity_recovery;
  }

  dir.write("monitors.csv", report.monitors_csv());
  dir.write("residuals.csv", report.residuals_csv());
  dir.write("radius.csv", radius_csv(radii));
  dir.write("domain_norms.csv", domain_norms_csv(domain));
  dir.write_json("report.json", rep);
  dir.finish(report.verdict);
  std::cout << mode_name(mode) << " run: " << report.verdict << " after " << report.iterations
            << " iterations, residual " << fmt17(report.residual_rel) << ", output " << dir.root() << "\n";
  return kExitOk;
}

struct VerifyOptions {
  bool all = false;
  std::vector<std::string> lemmas;
  bool calibrate = false;
  std::string calibration;
  std::string output = "runs/verify";
  std::optional<std::uint64_t> seed;
};

int cmd_verify(const VerifyOptions& opt) {
  if (!opt.all && opt.lemmas.empty()) throw ConfigError("verify needs --all or --lemma");
  std::vector<SuiteEntry> suite;
  if (opt.all) {
    suite = default_suite();
  } else {
    for (const auto& id : opt.lemmas) {
      try {
        for (auto& e : suite_for(id)) suite.push_back(e);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    }
  }
  for (auto& e : suite) {
    if (opt.seed) e.corpus.seed = *opt.seed;
  }
  const std::string cal_path = opt.calibration.empty() ? default_calibration_path() : opt.calibration;
  Calibration cal;
  if (!opt.calibrate) cal = load_calibration(cal_path);

  json cfg = {{"lemmas", json::array()}, {"calibrate", opt.calibrate}, {"calibration", cal_path}};
  for (const auto& e : suite) cfg["lemmas"].push_back({{"lemma", e.lemma}, {"corpus", e.corpus.to_json()}});
  RunDirectory dir(opt.output, "verify", cfg);
  if (!opt.calibrate) dir.set_calibration(cal_path);

  std::map<std::string, TestCorpus> corpora;
  std::vector<std::pair<SuiteEntry, BoundReport>> reports;
  for (const auto& e : suite) {
    const std::string key = e.corpus.to_json().dump();
    if (!corpora.count(key)) corpora.emplace(key, build_corpus(e.corpus));
    reports.emplace_back(e, run_lemma(e.lemma, corpora.at(key)));
    log().info("{} (d = {}) done", e.lemma, e.corpus.dim);
  }
  if (opt.calibrate) {
    for (const auto& [e, r] : reports) {
      record(cal, r, e.corpus.dim);
      cal.corpora["d" + std::to_string(e.corpus.dim)] = e.corpus;
    }
    finalize(cal);
    save_calibration(cal_path, cal);
    dir.set_calibration(cal_path);
  }

  bool ok = true;
  json summary = json::array();
  for (auto& [e, r] : reports) {
    apply(cal, r, e.corpus.dim);
    const std::string name = e.lemma + (e.corpus.dim == 3 ? "-d3" : "");
    dir.write("bounds/" + name + ".csv", r.csv());
    summary.push_back(r.summary());
    summary.back()["dim"] = e.corpus.dim;
    ok = ok && r.pass();
    std::cout << (r.pass() ? "PASS " : "FAIL ") << name << " max_ratio=" << fmt17(r.max_ratio()) << "\n";
    for (const auto& [q, s] : r.quantities) {
      if (!s.pass) {
        std::cout << "  regression " << q << ": " << fmt17(s.max_ratio) << " > 1.05 x " << fmt17(s.frozen) << "\n";
      }
    }
    for (const auto& [check, pass] : r.checks) {
      if (!pass) std::cout << "  failed check " << check << "\n";
    }
  }
  dir.write_json("summary.json", summary);
  dir.finish(ok ? "pass" : "regression");
  if (opt.calibrate) std::cout << "calibration written to " << cal_path << "\n";
  return ok ? kExitOk : kExitRegression;
}

struct TableOptions {
  std::string name;
  double t_min = 1e-6;
  double t_max = 10.0;
  int points = 256;
  std::vector<double> norms{0.5, 1.0, 2.0, 4.0};
  double gamma = 0.0;
  std::optional<double> C;
};

int cmd_table(const TableOptions& opt) {
  if (opt.name == "weights") {
    if (!(opt.t_min > 0.0) || !(opt.t_max > opt.t_min) || opt.points < 2) throw ConfigError("bad weight grid");
    std::cout << weights::WeightTable(opt.t_max, opt.t_min, opt.points).to_csv();
    return kExitOk;
  }
  if (opt.name != "horizons") throw ConfigError("unknown table " + opt.name + " (weights or horizons)");
  double C = 1.0;
  if (opt.C) {
    C = *opt.C;
  } else {
    try {
      C = load_calibration(default_calibration_path()).C_iter;
    } catch (const ConfigError& e) {
      log().warn("{}; using C = 1", e.what());
    }
  }
  if (!(C > 0.0) || !(opt.gamma >= 0.0)) throw ConfigError("horizon table needs C > 0 and gamma >= 0");
  std::cout << "norm,T_star,T_star_closed_form,T_omega_p1,T_omega_p2\n";
  for (double n : opt.norms) {
    if (!(n >= 0.0)) throw ConfigError("norms must be >= 0");
    weights::HorizonInput in;
    in.C = C;
    in.gamma = opt.gamma;
    in.u0_bmo = n;
    in.w0_bmo = n;
    const auto ts = weights::horizon_tstar(in);
    in.p = 1.0;
    const auto t1 = weights::horizon_tomega(in);
    in.p = 2.0;
    const auto t2 = weights::horizon_tomega(in);
    std::cout << fmt17(n) << "," << fmt17(ts.T) << "," << fmt17(ts.closed_form) << "," << fmt17(t1.T) << ","
              << fmt17(t2.T) << "\n";
  }
  return kExitOk;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Complexified Navier-Stokes iteration, analyticity probe and estimate verifier"};
  app.require_subcommand(1);

  RunOptions nse, vort;
  auto add_run = [&](const char* name, const char* help, RunOptions& o) {
    auto* s = app.add_subcommand(name, help);
    s->add_option("config", o.config, "Config file or preset name")->required();
    s->add_option("-o,--output", o.output, "Run directory (default runs/<config stem>)");
    s->add_option("--seed", o.seed, "Override the seed of random data");
    return s;
  };
  auto* s_nse = add_run("run-nse", "Run the complexified velocity iteration", nse);
  auto* s_vort = add_run("run-vorticity", "Run the complexified vorticity iteration (d = 3)", vort);

  VerifyOptions vo;
  auto* s_verify = app.add_subcommand("verify", "Check the inequality lemmas against frozen constants");
  s_verify->add_flag("--all", vo.all, "Run every lemma");
  s_verify->add_option("--lemma", vo.lemmas, "Lemma id (repeatable)");
  s_verify->add_flag("--calibrate", vo.calibrate, "Measure and freeze the constants");
  s_verify->add_option("--calibration", vo.calibration, "Calibration file");
  s_verify->add_option("-o,--output", vo.output, "Output directory");
  s_verify->add_option("--seed", vo.seed, "Override the corpus seed");

  TableOptions to;
  auto* s_table = app.add_subcommand("table", "Print the weight or horizon table as CSV");
  s_table->add_option("name", to.name, "weights or horizons")->required();
  s_table->add_option("--t-min", to.t_min, "Smallest time");
  s_table->add_option("--t-max", to.t_max, "Largest time");
  s_table->add_option("--points", to.points, "Number of times");
  s_table->add_option("--norms", to.norms, "Data norms for the horizon table")->delimiter(',');
  s_table->add_option("--gamma", to.gamma, "Forcing level");
  s_table->add_option("--C", to.C, "Constant (default: calibrated)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (s_nse->parsed()) return cmd_run(nse, Mode::velocity);
    if (s_vort->parsed()) return cmd_run(vort, Mode::vorticity);
    if (s_verify->parsed()) return cmd_verify(vo);
    if (s_table->parsed()) return cmd_table(to);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DivergenceError& e) {
    std::cerr << "diverged: " << e.what() << "\n";
    return kExitDivergence;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}

}  // namespace osc::cli
