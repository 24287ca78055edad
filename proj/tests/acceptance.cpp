// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 when any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "osc/cli/commands.hpp"
#include "osc/cli/config.hpp"
#include "osc/iteration/solver.hpp"
#include "osc/iteration/vorticity.hpp"
#include "osc/probe/radius.hpp"
#include "osc/semigroup/operators.hpp"
#include "osc/spaces/bmo.hpp"
#include "osc/spaces/littlewood_paley.hpp"
#include "osc/spaces/norms.hpp"
#include "osc/spaces/orlicz.hpp"
#include "osc/spectral/transform.hpp"
#include "osc/verify/bounds.hpp"
#include "osc/verify/calibration.hpp"
#include "osc/verify/corpus.hpp"
#include "osc/weights/horizons.hpp"
#include "osc/weights/weights.hpp"

using namespace osc;
namespace fs = std::filesystem;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
    }
  }
  void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double max_diff(const SpectralField& a, const SpectralField& b) { return (a - b).max_abs(); }

std::size_t nearest(const std::vector<double>& times, double t) {
  return static_cast<std::size_t>(
      std::min_element(times.begin(), times.end(),
                       [&](double a, double b) { return std::abs(a - t) < std::abs(b - t); }) -
      times.begin());
}

const Calibration& calibration() {
  static const Calibration cal = load_calibration(default_calibration_path());
  return cal;
}

// Runs shared by several criteria.
struct Runs {
  std::optional<std::pair<IterationState, ConvergenceReport>> tg, alpha;
  double tg_seconds = 0.0;
};
Runs& runs() {
  static Runs r;
  return r;
}

Outcome c1_spectral() {
  Outcome o;
  double rt = 0.0, pv = 0.0, idem = 0.0, div = 0.0, law = 0.0;
  std::uint64_t seed = 11;
  for (const Grid& g : {make_grid(2, 64, 2.0 * M_PI), make_grid(2, 128, 2.0 * M_PI), make_grid(3, 32, 2.0 * M_PI)}) {
    std::mt19937_64 rng(seed++);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    PointField p(g, g.dim());
    for (double& v : p.values) v = u(rng);
    const SpectralField f = forward(p);
    const PointField back = inverse(f);
    double scale = 0.0, err = 0.0, msq = 0.0, csq = 0.0;
    for (std::size_t i = 0; i < p.values.size(); ++i) {
      scale = std::max(scale, std::abs(p.values[i]));
      err = std::max(err, std::abs(back.values[i] - p.values[i]));
      msq += p.values[i] * p.values[i];
    }
    msq /= double(g.size());
    for (const cplx& c : f.data()) csq += std::norm(c);
    rt = std::max(rt, err / scale);
    pv = std::max(pv, std::abs(msq - csq) / msq);

    const double fmax = f.max_abs();
    const SpectralField pr = leray_project(f);
    idem = std::max(idem, max_diff(leray_project(pr), pr) / fmax);
    const auto& nyq = g.tables().nyquist;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (nyq[i]) continue;
      cplx s = 0.0;
      for (int ax = 0; ax < g.dim(); ++ax) s += g.k(ax)[i] * pr.component(ax)[i];
      div = std::max(div, std::abs(s) / fmax);
    }
    const SpectralField a = heat_apply(heat_apply(f, 0.013), 0.041);
    law = std::max(law, max_diff(a, heat_apply(f, 0.054)) / fmax);
  }
  o.require(rt <= 1e-12, "round trip");
  o.require(pv <= 1e-12, "Parseval");
  o.require(idem <= 1e-12, "Leray idempotence");
  o.require(div <= 1e-12, "divergence");
  o.require(law <= 1e-12, "semigroup law");
  o.note("round trip " + sci(rt) + ", Parseval " + sci(pv) + ", Leray " + sci(idem) + ", div " + sci(div) +
         ", semigroup " + sci(law));
  return o;
}

Outcome c2_littlewood_paley() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  CorpusConfig cc;
  cc.points = 64;
  const TestCorpus corpus = build_corpus(cc);
  o.require(corpus.members.size() >= 40, "corpus has fewer than 40 members");
  double recon = 0.0;
  for (const auto& m : corpus.members) {
    for (bool hom : {false, true}) {
      SpectralField f = m.field;
      if (hom) f.component(0)[0] = 0.0;
      if (f.max_abs() == 0.0) continue;
      SpectralField sum(f.grid(), 1);
      for (const auto& b : lp_decompose(f, hom).blocks) sum += b.field;
      recon = std::max(recon, max_diff(sum, f) / f.max_abs());
    }
  }
  o.require(recon <= 1e-10, "LP reconstruction");

  const OrliczSpec phi = OrliczSpec::phi_star();
  const OrliczSpec psi = OrliczSpec::psi_star();
  const std::vector<std::pair<std::string, std::function<double(const SpectralField&)>>> norms{
      {"L1", [](const SpectralField& f) { return lp_norm(f, 1.0); }},
      {"L2", [](const SpectralField& f) { return lp_norm(f, 2.0); }},
      {"Linf", [](const SpectralField& f) { return linf_norm(f); }},
      {"bmo", [](const SpectralField& f) { return bmo_norm(f, true); }},
      {"BMO", [](const SpectralField& f) { return bmo_norm(f, false); }},
      {"B0inf", [](const SpectralField& f) { return besov_norm(f, 0.0, kInf, kInf, false); }},
      {"hB1inf1", [](const SpectralField& f) { return besov_norm(f, 1.0, kInf, 1.0, true); }},
      {"B0,2,2", [](const SpectralField& f) { return besov_norm(f, 0.0, 2.0, 2.0, false); }},
      {"phi_star", [&](const SpectralField& f) { return orlicz_norm(f, phi); }},
      {"psi_star", [&](const SpectralField& f) { return orlicz_norm(f, psi); }},
  };
  int failures = 0, checks = 0;
  for (std::size_t i = 0; i < corpus.members.size(); i += 4) {
    const SpectralField& f = corpus.members[i].field;
    const SpectralField& h = corpus.members[(i + 7) % corpus.members.size()].field;
    for (const auto& [name, norm] : norms) {
      const double tol = name.find("_star") != std::string::npos ? 1e-7 : 1e-10;
      const double nf = norm(f);
      const double scaled = norm(-2.5 * f);
      checks += 2;
      if (std::abs(scaled - 2.5 * nf) > tol * std::max(1.0, 2.5 * nf)) ++failures;
      if (norm(f + h) > (nf + norm(h)) * (1.0 + tol) + tol) ++failures;
    }
  }
  o.require(failures == 0, std::to_string(failures) + " norm property checks");
  const double secs = seconds_since(t0);
  o.require(secs < 60.0, "runtime");
  o.note(std::to_string(corpus.members.size()) + " members, reconstruction " + sci(recon) + ", " +
         std::to_string(checks) + " norm checks, " + sci(secs) + " s");
  return o;
}

Outcome c3_taylor_green() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const cli::RunConfig rc = cli::load_run_config("tg2d");
  const IterationConfig ic = cli::build_iteration_config(rc, calibration().C_iter);
  runs().tg = run_iteration(ic);
  runs().tg_seconds = seconds_since(t0);
  const auto& [s, r] = *runs().tg;
  o.require(r.converged, "converged");
  double err = 0.0;
  const std::size_t n = s.times.size();
  for (int k = 1; k <= 8; ++k) {
    const std::size_t i = k * (n - 1) / 8;
    err = std::max(err, max_diff(s.re[i], std::exp(-2.0 * s.times[i]) * ic.initial));
  }
  o.require(err <= 1e-5, "limit vs e^{-2t} u0");
  o.require(r.residual_rel < 1e-5, "mild residual");
  o.require(runs().tg_seconds < 300.0, "runtime");
  o.note("N = " + std::to_string(rc.points) + ", iterations " + std::to_string(r.iterations) + ", max error " +
         sci(err) + ", residual " + sci(r.residual_rel) + ", " + sci(runs().tg_seconds) + " s");
  return o;
}

Outcome c4_sector() {
  Outcome o;
  if (!runs().tg) return {false, "no Taylor-Green run"};
  const auto& r = runs().tg->second;
  double im = 0.0;
  for (const auto& m : r.monitors) im = std::max(im, m.im_linf);
  o.require(im <= 1e-12, "sector invariant");
  o.require(r.max_monitor <= r.monitor_bound, "monitor bound");
  o.note("sup_n ||V||_inf " + sci(im) + ", M " + sci(r.max_monitor) + " <= " + sci(r.monitor_bound) +
         " with C = " + sci(calibration().C_iter));
  return o;
}

Outcome c5_radius() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const cli::RunConfig rc = cli::load_run_config("tg2d-alpha");
  runs().alpha = run_iteration(cli::build_iteration_config(rc, calibration().C_iter));
  const double run_secs = seconds_since(t0);
  const auto t1 = std::chrono::steady_clock::now();
  const auto& s = runs().alpha->first;
  std::vector<RadiusEstimate> est;
  double worst = 0.0;
  for (double t : {0.01, 0.04, 0.16}) {
    const std::size_t i = nearest(s.times, t);
    est.push_back(estimate_radius(s.re[i], s.times[i]));
    o.require(!est.back().indeterminate, "estimate at t = " + sci(t));
    worst = std::max(worst, est.back().relative_residual);
  }
  o.require(radius_nondecreasing(est, 0.0), "nondecreasing");
  const double c = radius_constant(est);
  o.require(c > 0.0, "positive c_fit");
  o.require(worst < 0.15, "fit residual");
  const double secs = seconds_since(t1);
  o.require(secs < 120.0, "post-run runtime");
  o.note("delta = " + sci(est[0].delta) + ", " + sci(est[1].delta) + ", " + sci(est[2].delta) + "; c_fit " + sci(c) +
         ", fit residual " + sci(worst) + ", run " + sci(run_secs) + " s, probe " + sci(secs) + " s");
  return o;
}

Outcome c6_shift() {
  Outcome o;
  if (!runs().alpha) return {false, "no shifted run"};
  cli::RunConfig rc = cli::load_run_config("tg2d-alpha");
  const auto alpha = rc.alpha;
  rc.alpha = {0.0, 0.0, 0.0};
  const auto [s0, r0] = run_iteration(cli::build_iteration_config(rc, calibration().C_iter));
  const auto& sa = runs().alpha->first;
  double worst = 0.0;
  for (double tp : {0.01, 0.04, 0.1, 0.2}) {
    const std::size_t i = nearest(sa.times, tp);
    const double t = sa.times[i];
    const double y[3] = {alpha[0] * t, alpha[1] * t, alpha[2] * t};
    const auto e = evaluate_complex_shift(s0.re[i], std::span<const double>(y, rc.dim));
    o.require(!e.overflow, "shift overflow");
    const PointField re = inverse(sa.re[i]);
    const PointField im = inverse(sa.im[i]);
    double err = 0.0, mx = 0.0;
    for (std::size_t k = 0; k < re.values.size(); ++k) {
      const cplx w(re.values[k], im.values[k]);
      err = std::max(err, std::abs(w - e.values.values[k]));
      mx = std::max(mx, std::abs(w));
    }
    worst = std::max(worst, err / mx);
  }
  o.require(worst <= 1e-3, "shift consistency");
  o.note("max relative gap " + sci(worst) + " at 4 times");
  return o;
}

Outcome c7_lemmas() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const Calibration& cal = calibration();
  int quantities = 0;
  double worst_stab = 0.0;
  std::string worst_name;
  for (const auto& e : default_suite()) {
    const TestCorpus corpus = build_corpus(e.corpus);
    BoundReport rep = run_lemma(e.lemma, corpus);
    apply(cal, rep, e.corpus.dim);
    quantities += static_cast<int>(rep.quantities.size());
    const std::string name = e.lemma + "@d" + std::to_string(e.corpus.dim);
    for (const auto& [q, s] : rep.quantities) o.require(s.pass, name + "/" + q);
    for (const auto& [c, ok] : rep.checks) o.require(ok, name + " check " + c);
    if (e.corpus.dim != 2) continue;
    CorpusConfig fine = e.corpus;
    fine.band = e.corpus.resolved_band();
    fine.points *= 2;
    const BoundReport rep2 = run_lemma(e.lemma, build_corpus(fine));
    for (const auto& [q, s] : rep.quantities) {
      const auto it = rep2.quantities.find(q);
      if (it == rep2.quantities.end()) {
        o.require(false, name + "/" + q + " missing at 2N");
        continue;
      }
      const double rel = std::abs(it->second.max_ratio - s.max_ratio) / s.max_ratio;
      if (rel > worst_stab) {
        worst_stab = rel;
        worst_name = name + "/" + q;
      }
    }
  }
  o.require(worst_stab <= 0.10, "resolution stability " + worst_name);
  const double secs = seconds_since(t0);
  o.require(secs < 900.0, "runtime");
  o.note(std::to_string(quantities) + " quantities within 1.05 x frozen; N vs 2N worst " + sci(worst_stab) + " (" +
         worst_name + "), " + sci(secs) + " s");
  return o;
}

Outcome c8_vorticity() {
  Outcome o;
  cli::RunConfig rw = cli::load_run_config("vort3d_p2");
  rw.initial.kind = "random";
  rw.initial.amplitude = 0.05;
  rw.T = 0.2;
  cli::RunConfig ru = rw;
  ru.mode = "velocity";
  const double C = calibration().C_iter;
  const auto [sw, rwep] = run_vorticity(cli::build_iteration_config(rw, C));
  const auto [su, ruep] = run_iteration(cli::build_iteration_config(ru, C));
  const double curl = curl_consistency(su, sw);
  o.require(rwep.converged && ruep.converged, "converged");
  o.require(curl <= 1e-4, "curl consistency");
  const double bound = calibration().velocity_recovery * kCalibrationSlack;
  o.require(rwep.max_velocity_ratio <= bound, "velocity recovery");

  int branches = 0;
  for (double n : {1.5, 2.0, 4.0, 8.0}) {
    weights::HorizonInput in;
    in.C = C;
    in.w0_bmo = n;
    in.w0_lp = n;
    in.p = 1.0;
    const auto h1 = weights::horizon_tomega(in);
    in.p = 2.0;
    const auto h2 = weights::horizon_tomega(in);
    o.require(h1.T > 0.0 && h2.T > 0.0, "horizon branches");
    o.require(h1.T <= h2.T, "p = 1 horizon <= p = 2 horizon at norm " + sci(n));
    branches += 2;
  }
  o.note("N = " + std::to_string(rw.points) + ", curl gap " + sci(curl) + ", velocity ratio " +
         sci(rwep.max_velocity_ratio) + " <= " + sci(bound) + ", " + std::to_string(branches) + " horizon evaluations");
  return o;
}

Outcome c9_orlicz() {
  Outcome o;
  const Grid g = make_grid(2, 32, 4.0);
  std::vector<double> mag(g.size(), 0.0);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 4.0);
  for (double& v : mag) v = u(rng);
  double worst_mod = 1.0;
  for (const OrliczSpec& spec : {OrliczSpec::phi_star(), OrliczSpec::psi_star()}) {
    const double s = luxemburg_norm(mag, {}, g.cell_volume(), spec);
    const double m = orlicz_modular(mag, {}, g.cell_volume(), spec, s);
    o.require(m >= 0.999 && m <= 1.001, "self-consistency " + spec.name);
    if (std::abs(m - 1.0) > std::abs(worst_mod - 1.0)) worst_mod = m;
  }
  std::vector<double> y;
  for (double v = 0.0; v <= 6.0; v += 0.25) y.push_back(v);
  const Conjugate q = legendre_fenchel([](double x) { return 0.5 * x * x; }, y);
  double dual = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) dual = std::max(dual, std::abs(q.value[i] - 0.5 * y[i] * y[i]));
  o.require(dual <= 1e-6, "quadratic self-duality");

  std::vector<double> z;
  for (double v = 2.0; v <= 10.0; v += 0.25) z.push_back(v);
  const Conjugate c = legendre_fenchel([](double x) { return x * std::log(std::exp(1.0) + x); }, z);
  double lo = kInf, hi = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    o.require(!c.infinite[i], "finite conjugate");
    lo = std::min(lo, c.value[i] / std::exp(z[i]));
    hi = std::max(hi, c.value[i] / std::exp(z[i]));
  }
  o.require(lo > 0.0 && std::isfinite(hi), "conjugate ratio bounded");
  o.note("modular " + sci(worst_mod) + ", self-duality " + sci(dual) + ", conjugate/e^y in [" + sci(lo) + ", " +
         sci(hi) + "]");
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Outcome c10_determinism() {
  Outcome o;
  const fs::path root = fs::temp_directory_path() / "osc_acceptance_determinism";
  fs::remove_all(root);
  const std::string preset = "tg2d-alpha";
  for (const char* sub : {"a", "b"}) {
    std::vector<std::string> args{"osc", "run-nse", preset, "--seed", "7", "-o", (root / sub).string()};
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream sink;
    auto* old = std::cout.rdbuf(sink.rdbuf());
    const int code = cli::run(static_cast<int>(argv.size()), argv.data());
    std::cout.rdbuf(old);
    o.require(code == cli::kExitOk, std::string("run ") + sub);
  }
  int compared = 0;
  for (const auto& entry : fs::directory_iterator(root / "a")) {
    if (entry.path().extension() != ".csv") continue;
    const fs::path other = root / "b" / entry.path().filename();
    o.require(fs::exists(other) && slurp(entry.path()) == slurp(other), entry.path().filename().string());
    ++compared;
  }
  o.require(compared > 0, "no CSV output");
  o.note(preset + ": " + std::to_string(compared) + " CSV files byte-identical");
  fs::remove_all(root);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"C1 spectral identities", c1_spectral},
      {"C2 Littlewood-Paley and norm properties", c2_littlewood_paley},
      {"C3 Taylor-Green limit", c3_taylor_green},
      {"C4 sector invariant and monitor bound", c4_sector},
      {"C5 radius growth", c5_radius},
      {"C6 shift consistency", c6_shift},
      {"C7 lemma regression", c7_lemmas},
      {"C8 vorticity cross-check", c8_vorticity},
      {"C9 Orlicz layer", c9_orlicz},
      {"C10 determinism", c10_determinism},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %s (%.1f s): %s\n", o.pass ? "PASS" : "FAIL", name, seconds_since(t0), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
