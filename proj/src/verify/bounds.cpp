#include "osc/verify/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "osc/semigroup/duhamel.hpp"
#include "osc/semigroup/operators.hpp"
#include "osc/spaces/bmo.hpp"
#include "osc/spaces/littlewood_paley.hpp"
#include "osc/spaces/norms.hpp"
#include "osc/spectral/transform.hpp"
#include "osc/util/format.hpp"
#include "osc/util/parallel.hpp"

namespace osc {
namespace {

constexpr double kTiny = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string label(double v) {
  if (std::isinf(v)) return "inf";
  std::ostringstream os;
  os << v;
  return os.str();
}

double ln_weight(double t) { return std::log(std::exp(1.0) + 1.0 / t); }

// Runs body(member index, rows) for every member in parallel and appends the
// rows in member order.
template <class Body>
void per_member(const TestCorpus& corpus, BoundReport& rep, Body body) {
  std::vector<std::vector<RatioRow>> rows(corpus.members.size());
  parallel_for(corpus.members.size(), [&](std::size_t m) { body(m, rows[m]); });
  for (auto& block : rows) {
    for (auto& r : block) rep.add(std::move(r));
  }
}

void push(std::vector<RatioRow>& out, const CorpusMember& m, std::string q, double t, double param, double lhs,
          double rhs) {
  if (!(rhs > kTiny)) return;
  out.push_back({m.name, std::move(q), t, param, lhs, rhs, lhs / rhs});
}

}  // namespace

void BoundReport::add(RatioRow row) {
  auto& q = quantities[row.quantity];
  if (q.argmax.empty() || row.ratio > q.max_ratio) {
    q.max_ratio = row.ratio;
    q.argmax = row.member;
  }
  rows.push_back(std::move(row));
}

double BoundReport::max_ratio() const {
  double m = 0.0;
  for (const auto& [k, q] : quantities) m = std::max(m, q.max_ratio);
  return m;
}

bool BoundReport::pass() const {
  for (const auto& [k, q] : quantities) {
    if (!q.pass) return false;
  }
  for (const auto& [k, ok] : checks) {
    if (!ok) return false;
  }
  return true;
}

std::string BoundReport::csv() const {
  std::string s = "member,quantity,t,param,lhs,rhs,ratio\n";
  for (const auto& r : rows) {
    s += r.member + "," + r.quantity + "," + fmt17(r.t) + "," + fmt17(r.param) + "," + fmt17(r.lhs) + "," +
         fmt17(r.rhs) + "," + fmt17(r.ratio) + "\n";
  }
  return s;
}

nlohmann::json BoundReport::summary() const {
  nlohmann::json q = nlohmann::json::object();
  for (const auto& [name, s] : quantities) {
    q[name] = {{"max_ratio", s.max_ratio}, {"argmax", s.argmax}, {"pass", s.pass}};
    if (s.has_frozen) q[name]["frozen"] = s.frozen;
  }
  return {{"lemma", lemma},
          {"rows", rows.size()},
          {"max_ratio", max_ratio()},
          {"pass", pass()},
          {"quantities", q},
          {"checks", checks},
          {"extras", extras}};
}

std::vector<double> default_times() { return {0.001, 0.003, 0.01, 0.03, 0.1, 0.3, 1.0}; }

BoundReport verify_semigroup_bmo(const TestCorpus& corpus, const std::vector<double>& times) {
  BoundReport rep;
  rep.lemma = "semigroup-bmo";
  per_member(corpus, rep, [&](std::size_t mi, std::vector<RatioRow>& out) {
    const CorpusMember& m = corpus.members[mi];
    for (double t : times) {
      const SpectralField u = heat_apply(m.field, t);
      const BmoParts parts = bmo_parts(u);
      const double grad = std::sqrt(t) * linf_norm(gradient(u));
      const double hess = t * linf_norm(gradient(gradient(u)));
      const double dt = t * linf_norm(laplacian(u));
      const struct {
        const char* tag;
        double u, f;
      } spaces[] = {{"BMO", parts.oscillation_all, m.report.bmo_global},
                    {"bmo", parts.oscillation_small + parts.mean_unit, m.report.bmo_local}};
      for (const auto& s : spaces) {
        const std::string p = s.tag;
        push(out, m, p + ".u", t, 0.0, s.u, s.f);
        push(out, m, p + ".grad", t, 0.0, grad, s.f);
        push(out, m, p + ".hess", t, 0.0, hess, s.f);
        push(out, m, p + ".dt", t, 0.0, dt, s.f);
        push(out, m, p + ".sum", t, 0.0, s.u + grad + hess + dt, s.f);
      }
    }
  });
  return rep;
}

BoundReport verify_frac_heat(const TestCorpus& corpus, const std::vector<double>& alphas,
                             const std::vector<double>& times) {
  BoundReport rep;
  rep.lemma = "frac-heat";
  per_member(corpus, rep, [&](std::size_t mi, std::vector<RatioRow>& out) {
    const CorpusMember& m = corpus.members[mi];
    for (double a : alphas) {
      for (double t : times) {
        const double lhs = std::pow(t, a) * linf_norm(frac_heat_apply(m.field, t, a));
        push(out, m, "alpha=" + label(a), t, a, lhs, m.report.bmo_global);
      }
    }
  });
  return rep;
}

std::vector<BesovParams> default_besov_params() {
  return {{0.0, 0.0, kInf, kInf}, {0.0, 1.0, kInf, 1.0}, {0.0, 1.0, kInf, kInf},
          {0.0, 1.0, 2.0, 2.0},   {0.0, 0.5, kInf, 1.0}, {0.5, 1.0, 2.0, 1.0}};
}

BoundReport verify_besov_holder(const TestCorpus& corpus, const std::vector<BesovParams>& params,
                                const std::vector<double>& times) {
  for (const auto& b : params) {
    if (!(b.s0 <= b.s1)) throw std::invalid_argument("Besov smoothing needs s0 <= s1");
    if (!(b.p >= 1.0) || !(b.q >= 1.0)) throw std::invalid_argument("Besov exponents need p, q >= 1");
  }
  std::vector<double> ps;
  for (const auto& b : params) {
    if (std::find(ps.begin(), ps.end(), b.p) == ps.end()) ps.push_back(b.p);
  }
  BoundReport rep;
  rep.lemma = "besov-holder";
  per_member(corpus, rep, [&](std::size_t mi, std::vector<RatioRow>& out) {
    const CorpusMember& m = corpus.members[mi];
    // Block norms of f and of e^{t Delta} f, per exponent and kind.
    auto blocks = [&](const SpectralField& g, double p, bool hom) { return lp_block_norms(g, p, hom); };
    std::vector<std::vector<BlockNorm>> f_hom, f_inh;
    for (double p : ps) {
      f_hom.push_back(blocks(m.field, p, true));
      f_inh.push_back(blocks(m.field, p, false));
    }
    for (double t : times) {
      const SpectralField u = heat_apply(m.field, t);
      for (std::size_t pi = 0; pi < ps.size(); ++pi) {
        const auto u_hom = blocks(u, ps[pi], true);
        const auto u_inh = blocks(u, ps[pi], false);
        std::set<std::string> log_done;
        for (const auto& b : params) {
          if (b.p != ps[pi]) continue;
          const double w = std::pow(t, -0.5 * (b.s1 - b.s0));
          const std::string tag =
              "s0=" + label(b.s0) + ",s1=" + label(b.s1) + ",p=" + label(b.p) + ",q=" + label(b.q);
          push(out, m, "hom/" + tag, t, 0.0, besov_from_blocks(u_hom, b.s1, b.q),
               w * besov_from_blocks(f_hom[pi], b.s0, b.q));
          push(out, m, "inhom/" + tag, t, 0.0, besov_from_blocks(u_inh, b.s1, b.q),
               (1.0 + w) * besov_from_blocks(f_inh[pi], b.s0, b.q));
          const std::string tag1 = "s0=" + label(b.s0) + ",s1=" + label(b.s1) + ",p=" + label(b.p);
          if (!log_done.insert(tag1).second) continue;
          push(out, m, "inhom-log/" + tag1, t, 0.0, besov_from_blocks(u_inh, b.s1, 1.0),
               (1.0 + w) * ln_weight(t) * besov_from_blocks(f_inh[pi], b.s0, kInf));
          if (b.s0 < b.s1) {
            push(out, m, "hom-log/" + tag1, t, 0.0, besov_from_blocks(u_hom, b.s1, 1.0),
                 w * besov_from_blocks(f_hom[pi], b.s0, kInf));
          }
        }
      }
    }
  });
  return rep;
}

BoundReport verify_embeddings(const TestCorpus& corpus) {
  BoundReport rep;
  rep.lemma = "embeddings";
  per_member(corpus, rep, [&](std::size_t mi, std::vector<RatioRow>& out) {
    const CorpusMember& m = corpus.members[mi];
    const NormReport& r = m.report;
    push(out, m, "B0/bmo", 0.0, 0.0, r.b0_inf_inf, r.bmo_local);
    push(out, m, "bmo/Linf", 0.0, 0.0, r.bmo_local, r.linf);
    push(out, m, "BMO/bmo", 0.0, 0.0, r.bmo_global, r.bmo_local);
    push(out, m, "hB0/BMO", 0.0, 0.0, r.b0_inf_inf_hom, r.bmo_global);
  });
  return rep;
}

BoundReport verify_duhamel_analytic(const TestCorpus& corpus, const std::vector<double>& times) {
  std::vector<std::size_t> pool;
  for (std::size_t i = 0; i < corpus.members.size(); ++i) {
    if (corpus.members[i].family == "random") pool.push_back(i);
  }
  if (pool.empty()) throw std::invalid_argument("duhamel check needs band-limited corpus members");
  const int d = corpus.config.dim;
  BoundReport rep;
  rep.lemma = "duhamel-analytic";
  per_member(corpus, rep, [&](std::size_t mi, std::vector<RatioRow>& out) {
    const CorpusMember& m = corpus.members[mi];
    std::vector<SpectralField> parts;
    for (int c = 0; c < d; ++c) parts.push_back(0.5 * corpus.members[pool[(mi + c + 1) % pool.size()]].field);
    const SpectralField f = stack(parts);
    const Grid& g = f.grid();
    // grad^{k+1} f for the right side.
    std::vector<double> df;
    SpectralField gk = gradient(f);
    for (int k = 1; k <= 3; ++k) {
      gk = gradient(gk);
      df.push_back(linf_norm(gk));
    }
    for (double t : times) {
      // u(t) = e^{t Delta} u0 + div int_0^t e^{(t-s) Delta} f ds, exact per
      // mode for time-independent f.
      SpectralField acc(g, d);
      const auto& k2 = g.k2();
      for (int c = 0; c < d; ++c) {
        auto src = f.component(c);
        auto dst = acc.component(c);
        for (std::size_t i = 0; i < g.size(); ++i) dst[i] = t * expint_phi1(t * k2[i]) * src[i];
      }
      SpectralField u = heat_apply(m.field, t);
      u += divergence(acc);
      SpectralField du = u;
      for (int k = 1; k <= 3; ++k) {
        du = gradient(du);
        const double rhs = std::pow(t, -0.5 * k) * m.report.bmo_global + t * df[k - 1];
        push(out, m, "k=" + std::to_string(k), t, k, linf_norm(du), rhs);
      }
    }
  });
  return rep;
}

BoundReport verify_velocity_recovery(const TestCorpus& corpus, const std::vector<double>& exponents) {
  if (corpus.config.dim != 3) throw std::invalid_argument("velocity recovery needs a 3D corpus");
  BoundReport rep;
  rep.lemma = "velocity-recovery";
  per_member(corpus, rep, [&](std::size_t mi, std::vector<RatioRow>& out) {
    const CorpusMember& m = corpus.members[mi];
    const SpectralField& f = m.field;
    // Mixed components keep the projection away from zero.
    std::vector<SpectralField> comps{f, partial(f, 0), partial(f, 1)};
    const SpectralField w = leray_project(stack(comps));
    const double lhs = linf_norm(biot_savart(w));
    const double winf = linf_norm(w);
    for (double p : exponents) push(out, m, "p=" + label(p), 0.0, p, lhs, winf + lp_norm(w, p));
  });
  return rep;
}

const std::vector<std::string>& lemma_ids() {
  static const std::vector<std::string> ids{"semigroup-bmo", "frac-heat",  "besov-holder",     "embeddings",
                                            "duhamel-analytic", "cz-orlicz", "velocity-recovery"};
  return ids;
}

BoundReport run_lemma(const std::string& id, const TestCorpus& corpus) {
  if (id == "semigroup-bmo") return verify_semigroup_bmo(corpus, default_times());
  if (id == "frac-heat") return verify_frac_heat(corpus, {0.25, 0.5, 1.0}, default_times());
  if (id == "besov-holder") return verify_besov_holder(corpus, default_besov_params(), default_times());
  if (id == "embeddings") return verify_embeddings(corpus);
  if (id == "duhamel-analytic") return verify_duhamel_analytic(corpus, default_times());
  if (id == "cz-orlicz") return verify_cz_orlicz(corpus);
  if (id == "velocity-recovery") return verify_velocity_recovery(corpus);
  throw std::invalid_argument("unknown lemma id: " + id);
}

}  // namespace osc
