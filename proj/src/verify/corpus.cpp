#include "osc/verify/corpus.hpp"

#include <cmath>
#include <optional>
#include <random>
#include <stdexcept>

#include "osc/spectral/transform.hpp"
#include "osc/util/parallel.hpp"

namespace osc {
namespace {

// Lattice index vectors with every |component| <= hi, in lexicographic order,
// keeping one representative of each +-pair (first nonzero component > 0).
std::vector<std::array<int, 3>> half_lattice(int dim, int hi) {
  std::vector<std::array<int, 3>> out;
  const int z_hi = dim == 3 ? hi : 0;
  for (int a = -hi; a <= hi; ++a) {
    for (int b = -hi; b <= hi; ++b) {
      for (int c = -z_hi; c <= z_hi; ++c) {
        const std::array<int, 3> idx{a, b, c};
        int first = 0;
        for (int v : idx) {
          if (v != 0) {
            first = v;
            break;
          }
        }
        if (first > 0) out.push_back(idx);
      }
    }
  }
  return out;
}

double index_norm(const std::array<int, 3>& idx) {
  return std::sqrt(double(idx[0]) * idx[0] + double(idx[1]) * idx[1] + double(idx[2]) * idx[2]);
}

void set_pair(SpectralField& f, const std::array<int, 3>& idx, cplx value) {
  const Grid& g = f.grid();
  const std::array<int, 3> neg{-idx[0], -idx[1], -idx[2]};
  f.component(0)[g.mode(idx)] += value;
  f.component(0)[g.mode(neg)] += std::conj(value);
}

void check_band(const Grid& g, int hi) {
  if (2 * hi >= g.points()) throw std::invalid_argument("corpus band exceeds the grid's resolution");
}

// Coefficients drawn in lattice order, so they do not depend on N.
SpectralField random_band(const Grid& g, double lo, double hi, double decay, std::uint64_t seed) {
  check_band(g, static_cast<int>(std::ceil(hi)));
  SpectralField f(g, 1);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::vector<std::pair<std::array<int, 3>, cplx>> picked;
  for (const auto& idx : half_lattice(g.dim(), static_cast<int>(std::ceil(hi)))) {
    const double n = index_norm(idx);
    const double re = gauss(rng);
    const double im = gauss(rng);
    if (n < lo || n > hi) continue;
    picked.emplace_back(idx, cplx(re, im) * std::pow(n, -decay));
  }
  double energy = 0.0;
  for (const auto& [idx, v] : picked) energy += 2.0 * std::norm(v);
  const double scale = energy > 0.0 ? 1.0 / std::sqrt(energy) : 0.0;
  for (const auto& [idx, v] : picked) set_pair(f, idx, scale * v);
  return f;
}

SpectralField mode_field(const Grid& g, const std::array<int, 3>& idx, bool sine) {
  SpectralField f(g, 1);
  set_pair(f, idx, sine ? cplx(0.0, -0.5) : cplx(0.5, 0.0));
  return f;
}

// Smooth periodic squared distance to the box center, ~|x - c|^2 nearby.
double rho2(const Grid& g, const std::array<double, 3>& x) {
  const double L = g.length();
  double r = 0.0;
  for (int a = 0; a < g.dim(); ++a) {
    const double s = (L / std::numbers::pi) * std::sin(std::numbers::pi * (x[a] - 0.5 * L) / L);
    r += s * s;
  }
  return r;
}

SpectralField sampled(const Grid& g, const std::function<double(const std::array<double, 3>&)>& fn) {
  return forward(sample(g, 1, [&](const std::array<double, 3>& x, double* out) { out[0] = fn(x); }));
}

}  // namespace

SpectralField white_band(const Grid& grid, int lo, int hi, std::uint64_t seed) {
  check_band(grid, hi);
  SpectralField f(grid, 1);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::vector<std::pair<std::array<int, 3>, double>> picked;
  for (const auto& idx : half_lattice(grid.dim(), hi)) {
    const double th = phase(rng);
    const double n = index_norm(idx);
    if (n < lo || n > hi) continue;
    picked.emplace_back(idx, th);
  }
  const double amp = picked.empty() ? 0.0 : 1.0 / std::sqrt(2.0 * picked.size());
  for (const auto& [idx, th] : picked) set_pair(f, idx, std::polar(amp, th));
  return f;
}

nlohmann::json CorpusConfig::to_json() const {
  return {{"dim", dim}, {"points", points}, {"length", length}, {"seed", seed}, {"band", resolved_band()}};
}

CorpusConfig CorpusConfig::from_json(const nlohmann::json& j) {
  CorpusConfig c;
  c.dim = j.value("dim", c.dim);
  c.points = j.value("points", c.points);
  c.length = j.value("length", c.length);
  c.seed = j.value("seed", c.seed);
  c.band = j.value("band", c.band);
  return c;
}

TestCorpus build_corpus(const CorpusConfig& config) {
  const Grid g(config.dim, config.points, config.length);
  const int band = config.resolved_band();
  check_band(g, band);
  const int d = config.dim;
  TestCorpus corpus;
  corpus.config = config;
  std::vector<std::pair<std::string, std::string>> names;
  std::vector<SpectralField> fields;
  auto add = [&](std::string family, std::string name, SpectralField f) {
    names.emplace_back(std::move(family), std::move(name));
    fields.push_back(std::move(f));
  };

  SpectralField one(g, 1);
  one.component(0)[0] = 1.0;
  add("constant", "constant", one);

  for (int m : {1, 2, 3, 4, 5, 6, 7, 8, 12, 16}) {
    if (m > band) continue;
    add("mode", "cos_x" + std::to_string(m), mode_field(g, {m, 0, 0}, false));
  }
  for (int m : {1, 2, 3, 4, 6, 8}) {
    if (m > band) continue;
    add("mode", "sin_diag" + std::to_string(m), mode_field(g, {m, m, 0}, true));
  }
  if (d == 3) {
    for (int m : {1, 2, 3, 4}) {
      if (m <= band) add("mode", "cos_z" + std::to_string(m), mode_field(g, {0, 0, m}, false));
    }
  }

  const std::uint64_t s = config.seed;
  const double b = band;
  const double rb[][3] = {{1, 2, 0},         {1, 4, 0},         {2, 6, 0},     {4, 8, 0},   {1, 8, 0},
                          {b / 2, b, 0},     {1, b, 0},         {b / 4, b / 2, 0}, {1, b, 1}, {1, b, 2}};
  for (std::size_t i = 0; i < std::size(rb); ++i) {
    const double hi = std::min(rb[i][1], b);
    const double lo = std::min(rb[i][0], hi);
    add("random", "random" + std::to_string(i), random_band(g, lo, hi, rb[i][2], s + 101 * (i + 1)));
  }

  for (double eps : {0.2, 0.3, 0.5, 0.8, 1.2}) {
    add("log", "trunc_log_" + std::to_string(eps).substr(0, 3),
        sampled(g, [&g, eps](const std::array<double, 3>& x) { return 0.5 * std::log(rho2(g, x) + eps * eps); }));
  }

  const double bumps[][2] = {{0.5, 0.2}, {1.0, 0.2}, {1.5, 0.3}, {1.0, 0.5}, {2.0, 0.3}};
  for (const auto& bw : bumps) {
    const double R = bw[0];
    const double w = bw[1];
    add("bump", "bump_R" + std::to_string(R).substr(0, 3) + "_w" + std::to_string(w).substr(0, 3),
        sampled(g, [&g, R, w](const std::array<double, 3>& x) {
          return 0.5 * (1.0 - std::tanh((std::sqrt(rho2(g, x)) - R) / w));
        }));
  }
  add("bump", "smoothed_square", sampled(g, [&g](const std::array<double, 3>& x) {
        const double L = g.length();
        double v = 1.0;
        for (int a = 0; a < g.dim(); ++a) {
          const double s = (L / std::numbers::pi) * std::sin(std::numbers::pi * (x[a] - 0.5 * L) / L);
          v *= 0.5 * (1.0 - std::tanh((std::abs(s) - 1.0) / 0.25));
        }
        return v;
      }));

  const int wb[][2] = {{1, band / 4}, {band / 4, band / 2}, {band / 2, band},
                       {1, band},     {2, band / 2},        {3 * band / 4, band}};
  for (std::size_t i = 0; i < std::size(wb); ++i) {
    const int lo = std::max(1, wb[i][0]);
    const int hi = std::max(lo, wb[i][1]);
    add("white", "white" + std::to_string(i) + "_" + std::to_string(lo) + "_" + std::to_string(hi),
        white_band(g, lo, hi, s + 7919 * (i + 1)));
  }

  std::vector<std::optional<NormReport>> reports(fields.size());
  parallel_for(fields.size(), [&](std::size_t i) { reports[i] = make_norm_report(fields[i], 0.0, {1.0, 2.0}); });
  for (std::size_t i = 0; i < fields.size(); ++i) {
    corpus.members.push_back({names[i].second, names[i].first, std::move(fields[i]), std::move(*reports[i])});
  }
  return corpus;
}

}  // namespace osc
