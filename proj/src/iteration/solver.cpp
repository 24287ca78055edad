#include "osc/iteration/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "internal.hpp"
#include "osc/errors.hpp"
#include "osc/semigroup/duhamel.hpp"
#include "osc/semigroup/operators.hpp"
#include "osc/semigroup/quadrature.hpp"
#include "osc/simd/kernels.hpp"
#include "osc/spaces/norm_report.hpp"
#include "osc/spaces/norms.hpp"
#include "osc/spectral/transform.hpp"
#include "osc/util/format.hpp"
#include "osc/util/log.hpp"
#include "osc/util/parallel.hpp"
#include "osc/weights/weights.hpp"

namespace osc {
namespace {

using Fields = std::vector<SpectralField>;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::span<const double> alpha_span(const IterationConfig& c) {
  return {c.alpha.data(), static_cast<std::size_t>(c.grid().dim())};
}

double relative_divergence(const SpectralField& f) {
  const auto& kabs = f.grid().kabs();
  double scale = 0.0;
  for (int c = 0; c < f.components(); ++c) {
    auto u = f.component(c);
    for (std::size_t k = 0; k < u.size(); ++k) scale = std::max(scale, kabs[k] * std::abs(u[k]));
  }
  return scale == 0.0 ? 0.0 : divergence(f).max_abs() / scale;
}

std::vector<double> resolved_times(const IterationConfig& c) {
  if (c.times.empty()) return snapshot_times(c.T);
  const auto& t = c.times;
  if (t.size() < 2 || t.front() != 0.0) throw ConfigError("snapshot times must start at 0");
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (!(t[i] > t[i - 1])) throw ConfigError("snapshot times must increase");
  }
  if (t.back() > c.T * (1.0 + 1e-12)) throw ConfigError("snapshot times exceed T");
  return t;
}

void validate(const IterationConfig& c) {
  const Grid& g = c.grid();
  const int d = g.dim();
  if (c.initial.components() != d || !c.initial.is_real()) {
    throw ConfigError("initial data must be a real d-vector field");
  }
  if (!(c.T > 0.0) || !std::isfinite(c.T)) throw ConfigError("horizon T must be positive and finite");
  if (c.mode == Mode::vorticity) {
    if (d != 3) throw ConfigError("vorticity mode needs d = 3");
    if (!(c.p >= 1.0 && c.p < 3.0)) throw ConfigError("vorticity exponent p must satisfy 1 <= p < 3");
  }
  if (!(c.tolerance > 0.0) || c.max_iterations < 1) throw ConfigError("need tolerance > 0 and max_iterations >= 1");
  if (!(c.inner_tolerance > 0.0) || c.inner_max_iterations < 1) throw ConfigError("bad inner iteration settings");
  for (int a = 0; a < 3; ++a) {
    if (!std::isfinite(c.alpha[a])) throw ConfigError("shift vector must be finite");
    if (a >= d && c.alpha[a] != 0.0) throw ConfigError("shift vector has more components than the grid");
  }
  const double defect = relative_divergence(c.initial);
  if (defect > 1e-10) {
    throw ConfigError("initial data is not divergence-free (relative defect " + fmt17(defect) + ")");
  }
  validate_forcing(c.forcing, g);
}

struct Context {
  std::vector<double> times;
  ExpStepWeights weights;
  Fields heat0;
  std::vector<ComplexPair> forcing;  // empty when the forcing is zero
};

Context make_context(const IterationConfig& c) {
  validate(c);
  const Grid& g = c.grid();
  Context ctx;
  ctx.times = resolved_times(c);
  ctx.weights = exp_step_weights(g, ctx.times);
  for (double t : ctx.times) ctx.heat0.push_back(heat_apply(c.initial, t));
  if (!c.forcing.zero()) {
    for (double t : ctx.times) {
      ComplexPair fg = c.forcing.at(g, g.dim(), t, alpha_span(c));
      if (c.mode == Mode::vorticity) fg = ComplexPair(curl(fg.re), curl(fg.im));
      ctx.forcing.push_back(std::move(fg));
    }
  }
  return ctx;
}

// X = base_re - alpha.grad D[Y], Y = base_im + alpha.grad D[X], by fixed point.
// alpha.grad commutes with the integrator, so it acts on D[.] directly.
std::pair<Fields, Fields> couple(const IterationConfig& c, const Context& ctx, Fields base_re, Fields base_im,
                                 int* inner) {
  *inner = 0;
  if (c.alpha_norm() == 0.0) return {std::move(base_re), std::move(base_im)};
  const auto alpha = alpha_span(c);
  Fields x = base_re;
  Fields y = base_im;
  double prev = std::numeric_limits<double>::infinity();
  for (int it = 1; it <= c.inner_max_iterations; ++it) {
    const Fields dx = duhamel_snapshots(x, ctx.weights);
    const Fields dy = duhamel_snapshots(y, ctx.weights);
    double diff = 0.0;
    double scale = 0.0;
    for (std::size_t m = 0; m < x.size(); ++m) {
      SpectralField xn = base_re[m] - directional_derivative(dy[m], alpha);
      SpectralField yn = base_im[m] + directional_derivative(dx[m], alpha);
      diff = std::max({diff, (xn - x[m]).max_abs(), (yn - y[m]).max_abs()});
      scale = std::max({scale, xn.max_abs(), yn.max_abs()});
      x[m] = std::move(xn);
      y[m] = std::move(yn);
    }
    *inner = it;
    if (diff <= c.inner_tolerance * scale) return {std::move(x), std::move(y)};
    if (it > 3 && !(diff < prev)) {
      throw ConfigError("shift coupling does not contract; |alpha| is too large for T (|alpha| = " +
                        fmt17(c.alpha_norm()) + ")");
    }
    prev = diff;
  }
  throw ConfigError("shift coupling did not converge in " + std::to_string(c.inner_max_iterations) +
                    " inner iterations; reduce |alpha|");
}

double weighted_sup_diff(const Fields& a, const Fields& b, const std::vector<double>& times) {
  std::vector<double> v(a.size(), 0.0);
  parallel_for(a.size(), [&](std::size_t m) {
    if (times[m] > 0.0) v[m] = weights::phi1(times[m]) * linf_norm(a[m] - b[m]);
  });
  return *std::max_element(v.begin(), v.end());
}

void guard(const Monitors& mon, double limit) {
  for (double v : {mon.linf, mon.b0, mon.bmo, mon.fourth, mon.q, mon.max}) {
    if (!(v <= limit)) {
      nlohmann::json diag = {{"n", mon.n},          {"linf", mon.linf}, {"b0", mon.b0},
                             {"bmo", mon.bmo},      {"fourth", mon.fourth}, {"q", mon.q},
                             {"max", mon.max},      {"diff", mon.diff}, {"limit", limit}};
      throw DivergenceError("monitor blow-up at iterate " + std::to_string(mon.n) + " (value " + fmt17(v) +
                                " > " + fmt17(limit) + ")",
                            diag.dump(2));
    }
  }
}

IterationState assemble(const IterationConfig& c, const Context& ctx, const std::vector<ComplexPair>* sources,
                        int n, const IterationState* prev) {
  const Grid& g = c.grid();
  const int d = g.dim();
  const std::size_t count = ctx.times.size();
  Fields s_re;
  Fields s_im;
  for (std::size_t m = 0; m < count; ++m) {
    SpectralField a = sources ? (*sources)[m].re : SpectralField(g, d);
    SpectralField b = sources ? (*sources)[m].im : SpectralField(g, d);
    if (!ctx.forcing.empty()) {
      a += ctx.forcing[m].re;
      b += ctx.forcing[m].im;
    }
    s_re.push_back(std::move(a));
    s_im.push_back(std::move(b));
  }
  Fields base_re = duhamel_snapshots(s_re, ctx.weights);
  Fields base_im = duhamel_snapshots(s_im, ctx.weights);
  for (std::size_t m = 0; m < count; ++m) base_re[m] += ctx.heat0[m];

  IterationState s;
  s.mode = c.mode;
  s.n = n;
  s.times = ctx.times;
  int inner = 0;
  auto [x, y] = couple(c, ctx, std::move(base_re), std::move(base_im), &inner);
  s.re = std::move(x);
  s.im = std::move(y);
  // The t = 0 snapshot is never integrated: X(0) = x0 and Y(0) = 0 exactly.
  s.re[0] = c.initial;
  s.im[0].set_zero();

  if (prev) {
    s.pressure_defect = prev->pressure_defect;
    s.divergence_defect = prev->divergence_defect;
    s.history = prev->history;
  }
  for (std::size_t m = 0; m < count; ++m) {
    s.divergence_defect = std::max({s.divergence_defect, relative_divergence(s.re[m]), relative_divergence(s.im[m])});
  }
  Monitors mon = c.mode == Mode::velocity ? detail::velocity_monitors(s) : detail::vorticity_monitors(s, c.p);
  mon.n = n;
  mon.inner_iterations = inner;
  mon.diff = kNaN;
  if (prev) mon.diff = weighted_sup_diff(s.re, prev->re, s.times) + weighted_sup_diff(s.im, prev->im, s.times);
  s.history.push_back(mon);
  log().info("{} iterate {}: max monitor {:.6e}, diff {:.6e}, inner {}", mode_name(c.mode), n, mon.max, mon.diff,
             inner);
  guard(mon, c.blowup);
  return s;
}

// Symmetric and antisymmetric pair tables for d = 2, 3.
std::vector<std::pair<int, int>> upper_pairs(int d, bool diagonal) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < d; ++i) {
    for (int j = diagonal ? i : i + 1; j < d; ++j) out.emplace_back(i, j);
  }
  return out;
}

ComplexPair velocity_sources_impl(const SpectralField& u, const SpectralField& v, double* defect) {
  const Grid& g = u.grid();
  const int d = g.dim();
  if (u.max_abs() == 0.0 && v.max_abs() == 0.0) {
    if (defect) *defect = 0.0;
    return ComplexPair(g, d);
  }
  const PointField pu = inverse(dealias(u));
  const PointField pv = inverse(dealias(v));
  const auto pairs = upper_pairs(d, true);
  const int np = static_cast<int>(pairs.size());
  PointField pa(g, np);
  PointField pb(g, np);
  std::vector<double> tmp(g.size());
  for (int q = 0; q < np; ++q) {
    const auto [i, j] = pairs[q];
    simd::mul(pa.component(q), pu.component(i), pu.component(j));
    simd::mul(tmp, pv.component(i), pv.component(j));
    auto a = pa.component(q);
    for (std::size_t x = 0; x < a.size(); ++x) a[x] -= tmp[x];
    simd::mul(pb.component(q), pu.component(i), pv.component(j));
    simd::mul_add(pb.component(q), pv.component(i), pu.component(j));
  }
  SpectralField sa = forward(pa);
  SpectralField sb = forward(pb);
  dealias_inplace(sa);
  dealias_inplace(sb);
  SpectralField a_full(g, d * d);
  SpectralField b_full(g, d * d);
  for (int q = 0; q < np; ++q) {
    const auto [i, j] = pairs[q];
    for (int idx : {i * d + j, j * d + i}) {
      std::copy(sa.component(q).begin(), sa.component(q).end(), a_full.component(idx).begin());
      std::copy(sb.component(q).begin(), sb.component(q).end(), b_full.component(idx).begin());
    }
  }
  const SpectralField div_a = tensor_divergence(a_full);
  const SpectralField div_b = tensor_divergence(b_full);
  // b_full = UV + VU, and R is defined from UV.
  const PressurePair pr = pressure_from_fluxes(a_full, 0.5 * b_full);
  SpectralField src_u = -1.0 * (div_a + gradient(pr.pi));
  SpectralField src_v = -1.0 * (div_b + gradient(pr.r));
  if (defect) {
    double gap = 0.0;
    const double su = div_a.max_abs();
    const double sv = div_b.max_abs();
    if (su > 0.0) gap = std::max(gap, (src_u + leray_project(div_a)).max_abs() / su);
    if (sv > 0.0) gap = std::max(gap, (src_v + leray_project(div_b)).max_abs() / sv);
    *defect = gap;
  }
  return ComplexPair(std::move(src_u), std::move(src_v));
}

std::pair<IterationState, ConvergenceReport> run(const IterationConfig& c, const StepObserver& observer) {
  IterationState state = init_iterate(c);
  if (observer) observer(state);
  ConvergenceReport rep;
  rep.mode = c.mode;
  for (int n = 1; n <= c.max_iterations; ++n) {
    state = step_iterate(state, c);
    if (observer) observer(state);
    if (state.history.back().diff <= c.tolerance) {
      rep.converged = true;
      break;
    }
  }
  rep.iterations = state.n;
  rep.monitors = state.history;
  for (std::size_t i = 2; i < rep.monitors.size(); ++i) {
    const double prev = rep.monitors[i - 1].diff;
    rep.contraction.push_back(prev > 0.0 ? rep.monitors[i].diff / prev : 0.0);
  }
  rep.residuals = mild_residual(state, c, c.residual_probes);
  for (const auto& r : rep.residuals) {
    rep.residual_abs = std::max(rep.residual_abs, r.absolute);
    rep.residual_rel = std::max(rep.residual_rel, r.relative);
  }
  rep.monitor_bound = monitor_bound(c);
  for (const auto& m : rep.monitors) {
    rep.max_monitor = std::max(rep.max_monitor, m.max);
    rep.max_im_linf = std::max(rep.max_im_linf, m.im_linf);
    rep.max_velocity_ratio = std::max(rep.max_velocity_ratio, m.velocity_ratio);
  }
  rep.monitor_bound_ok = rep.max_monitor <= rep.monitor_bound;
  rep.pressure_defect = state.pressure_defect;
  rep.divergence_defect = state.divergence_defect;
  rep.gamma = forcing_level(c.forcing);
  rep.verdict = rep.converged ? "converged" : "not_converged";
  if (!rep.converged) log().warn("{} iteration did not converge in {} steps", mode_name(c.mode), c.max_iterations);
  return {std::move(state), std::move(rep)};
}

}  // namespace

namespace detail {

Monitors velocity_monitors(const IterationState& s) {
  const std::size_t count = s.times.size();
  std::vector<std::optional<NormReport>> ru(count);
  std::vector<std::optional<NormReport>> rv(count);
  parallel_for(2 * count, [&](std::size_t i) {
    const std::size_t m = i / 2;
    if (i % 2 == 0) {
      ru[m] = make_norm_report(s.re[m], s.times[m]);
    } else {
      rv[m] = make_norm_report(s.im[m], s.times[m]);
    }
  });
  double su[4] = {0, 0, 0, 0};
  double sv[4] = {0, 0, 0, 0};
  double v_linf = 0.0;
  for (std::size_t m = 0; m < count; ++m) {
    const double t = s.times[m];
    const double p2 = std::sqrt(t);
    const double a[4] = {ru[m]->phi1_linf, ru[m]->b0_inf_inf, ru[m]->bmo_local, p2 * ru[m]->b1_inf_1_hom};
    const double b[4] = {rv[m]->phi1_linf, rv[m]->b0_inf_inf, rv[m]->bmo_local, p2 * rv[m]->b1_inf_1_hom};
    for (int q = 0; q < 4; ++q) {
      su[q] = std::max(su[q], a[q]);
      sv[q] = std::max(sv[q], b[q]);
    }
    v_linf = std::max(v_linf, rv[m]->linf);
  }
  Monitors mon;
  mon.linf = su[0] + sv[0];
  mon.b0 = su[1] + sv[1];
  mon.bmo = su[2] + sv[2];
  mon.fourth = su[3] + sv[3];
  mon.max = std::max({mon.linf, mon.b0, mon.bmo, mon.fourth});
  mon.im_linf = v_linf;
  return mon;
}

std::vector<ComplexPair> mode_sources(Mode mode, const std::vector<SpectralField>& re,
                                      const std::vector<SpectralField>& im, double* pressure_defect) {
  std::vector<std::optional<ComplexPair>> out(re.size());
  std::vector<double> defects(re.size(), 0.0);
  parallel_for(re.size(), [&](std::size_t m) {
    if (mode == Mode::velocity) {
      out[m] = velocity_sources_impl(re[m], im[m], pressure_defect ? &defects[m] : nullptr);
    } else {
      out[m] = vorticity_sources(re[m], im[m]);
    }
  });
  if (pressure_defect) *pressure_defect = *std::max_element(defects.begin(), defects.end());
  std::vector<ComplexPair> result;
  result.reserve(out.size());
  for (auto& o : out) result.push_back(std::move(*o));
  return result;
}

}  // namespace detail

const char* mode_name(Mode m) { return m == Mode::velocity ? "velocity" : "vorticity"; }

double IterationConfig::alpha_norm() const {
  return std::sqrt(alpha[0] * alpha[0] + alpha[1] * alpha[1] + alpha[2] * alpha[2]);
}

std::vector<double> snapshot_times(double T, int count, double first, const std::vector<double>& extra) {
  if (!(T > 0.0) || count < 3 || !(first > 0.0 && first < 1.0)) {
    throw std::invalid_argument("snapshot grid needs T > 0, count >= 3 and 0 < first < 1");
  }
  std::vector<double> t{0.0};
  const int geo = count - 1;
  for (int i = 0; i < geo; ++i) t.push_back(T * std::pow(first, 1.0 - double(i) / (geo - 1)));
  t.back() = T;
  for (double e : extra) {
    if (!(e > 0.0 && e <= T)) throw std::invalid_argument("extra snapshot times must lie in (0, T]");
    t.push_back(e);
  }
  std::sort(t.begin(), t.end());
  std::vector<double> out{t.front()};
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (t[i] - out.back() > 1e-12 * T) out.push_back(t[i]);
  }
  return out;
}

ComplexPair velocity_sources(const SpectralField& u, const SpectralField& v) {
  return velocity_sources_impl(u, v, nullptr);
}

double pressure_consistency(const SpectralField& u, const SpectralField& v) {
  double gap = 0.0;
  velocity_sources_impl(u, v, &gap);
  return gap;
}

double monitor_bound(const IterationConfig& c) {
  const double T = c.T;
  if (c.mode == Mode::velocity) return 1.0 / (2.0 * c.C * std::sqrt(T) * weights::Psi2(T));
  if (c.p > 1.0) return 1.0 / (2.0 * c.C * T * weights::Psi1_omega(T));
  return 1.0 / (2.0 * c.C * std::sqrt(T) * weights::Psi2_omega(T));
}

IterationState init_iterate(const IterationConfig& config) {
  const Context ctx = make_context(config);
  return assemble(config, ctx, nullptr, 0, nullptr);
}

IterationState step_iterate(const IterationState& state, const IterationConfig& config) {
  const Context ctx = make_context(config);
  if (state.mode != config.mode || state.times != ctx.times) {
    throw std::invalid_argument("state does not belong to this configuration");
  }
  double defect = 0.0;
  const auto sources = detail::mode_sources(config.mode, state.re, state.im,
                                            config.mode == Mode::velocity ? &defect : nullptr);
  if (defect > 1e-8) log().warn("pressure forms disagree by {:.3e} at iterate {}", defect, state.n + 1);
  IterationState next = assemble(config, ctx, &sources, state.n + 1, &state);
  next.pressure_defect = std::max(next.pressure_defect, defect);
  return next;
}

std::pair<IterationState, ConvergenceReport> run_iteration(const IterationConfig& config,
                                                           const StepObserver& observer) {
  if (config.mode != Mode::velocity) throw ConfigError("run_iteration needs velocity mode");
  return run(config, observer);
}

std::vector<ResidualRow> mild_residual(const IterationState& s, const IterationConfig& c, int probes) {
  const Context ctx = make_context(c);
  const Grid& g = c.grid();
  const std::size_t count = s.times.size();
  if (probes < 1) throw std::invalid_argument("need at least one residual probe");
  const auto sources = detail::mode_sources(s.mode, s.re, s.im, nullptr);
  const auto alpha = alpha_span(c);
  const bool shifted = c.alpha_norm() > 0.0;
  Fields g_re;
  Fields g_im;
  for (std::size_t m = 0; m < count; ++m) {
    SpectralField a = sources[m].re;
    SpectralField b = sources[m].im;
    if (!ctx.forcing.empty()) {
      a += ctx.forcing[m].re;
      b += ctx.forcing[m].im;
    }
    if (shifted) {
      a -= directional_derivative(s.im[m], alpha);
      b += directional_derivative(s.re[m], alpha);
    }
    g_re.push_back(std::move(a));
    g_im.push_back(std::move(b));
  }
  // Panel count per interval keeps |k|^2 h_panel <= 4 on the active modes.
  double k2max = 0.0;
  const auto& k2 = g.k2();
  for (const Fields* fs : {&g_re, &g_im}) {
    for (const auto& f : *fs) {
      for (int comp = 0; comp < f.components(); ++comp) {
        auto u = f.component(comp);
        for (std::size_t k = 0; k < u.size(); ++k) {
          if (u[k] != cplx(0.0, 0.0)) k2max = std::max(k2max, k2[k]);
        }
      }
    }
  }
  std::vector<std::size_t> probe_idx;
  for (int i = 1; i <= probes; ++i) {
    const auto idx = static_cast<std::size_t>(std::llround(double(i) * (count - 1) / probes));
    if (idx >= 1 && (probe_idx.empty() || idx != probe_idx.back())) probe_idx.push_back(idx);
  }
  std::vector<ResidualRow> rows;
  SpectralField acc_re(g, g.dim());
  SpectralField acc_im(g, g.dim());
  std::size_t next_probe = 0;
  for (std::size_t j = 0; j + 1 < count && next_probe < probe_idx.size(); ++j) {
    const double h = s.times[j + 1] - s.times[j];
    const int sub = std::clamp(static_cast<int>(std::ceil(k2max * h / 4.0)), 1, 64);
    std::vector<double> bp(sub + 1);
    for (int i = 0; i <= sub; ++i) bp[i] = h * i / sub;
    const QuadratureRule rule = QuadratureRule::panels(bp, 16);
    for (int part = 0; part < 2; ++part) {
      const Fields& gs = part == 0 ? g_re : g_im;
      SpectralField& acc = part == 0 ? acc_re : acc_im;
      const SourceProvider src = [&gs, j, h](double tau) {
        const double theta = tau / h;
        SpectralField out = gs[j];
        out *= 1.0 - theta;
        out.axpy(theta, gs[j + 1]);
        return out;
      };
      acc = heat_apply(acc, h);
      acc += duhamel_integrate(src, h, rule);
    }
    if (j + 1 == probe_idx[next_probe]) {
      const std::size_t m = j + 1;
      const double scale = linf_norm(s.re[m]) + linf_norm(s.im[m]);
      ResidualRow r;
      r.t = s.times[m];
      r.absolute = linf_norm(s.re[m] - (ctx.heat0[m] + acc_re)) + linf_norm(s.im[m] - acc_im);
      r.relative = scale > 0.0 ? r.absolute / scale : (r.absolute == 0.0 ? 0.0 : kNaN);
      rows.push_back(r);
      ++next_probe;
    }
  }
  return rows;
}

nlohmann::json ConvergenceReport::to_json() const {
  nlohmann::json j;
  j["mode"] = mode_name(mode);
  j["verdict"] = verdict;
  j["converged"] = converged;
  j["iterations"] = iterations;
  j["contraction"] = contraction;
  auto& res = j["residuals"] = nlohmann::json::array();
  for (const auto& r : residuals) res.push_back({{"t", r.t}, {"absolute", r.absolute}, {"relative", r.relative}});
  j["residual_abs"] = residual_abs;
  j["residual_rel"] = residual_rel;
  j["monitor_bound"] = monitor_bound;
  j["monitor_bound_ok"] = monitor_bound_ok;
  j["max_monitor"] = max_monitor;
  j["max_im_linf"] = max_im_linf;
  if (mode == Mode::vorticity) j["max_velocity_ratio"] = max_velocity_ratio;
  j["pressure_defect"] = pressure_defect;
  j["divergence_defect"] = divergence_defect;
  j["gamma"] = gamma;
  return j;
}

std::string ConvergenceReport::monitors_csv() const {
  std::ostringstream os;
  if (mode == Mode::velocity) {
    os << "n,L,L_prime,L_dprime,L_tprime,M,diff,sup_im_linf,inner_iterations\n";
  } else {
    os << "n,K,K_prime,K_dprime,K_tprime,Q,M,diff,sup_im_linf,velocity_ratio,inner_iterations\n";
  }
  for (const auto& m : monitors) {
    os << m.n << ',' << fmt17(m.linf) << ',' << fmt17(m.b0) << ',' << fmt17(m.bmo) << ',' << fmt17(m.fourth);
    if (mode == Mode::vorticity) os << ',' << fmt17(m.q);
    os << ',' << fmt17(m.max) << ',' << fmt17(m.diff) << ',' << fmt17(m.im_linf);
    if (mode == Mode::vorticity) os << ',' << fmt17(m.velocity_ratio);
    os << ',' << m.inner_iterations << '\n';
  }
  return os.str();
}

std::string ConvergenceReport::residuals_csv() const {
  std::ostringstream os;
  os << "t,absolute,relative\n";
  for (const auto& r : residuals) os << fmt17(r.t) << ',' << fmt17(r.absolute) << ',' << fmt17(r.relative) << '\n';
  return os.str();
}

std::pair<IterationState, ConvergenceReport> run_vorticity(const IterationConfig& config,
                                                           const StepObserver& observer) {
  if (config.mode != Mode::vorticity) throw ConfigError("run_vorticity needs vorticity mode");
  return run(config, observer);
}

}  // namespace osc
