#include "osc/spaces/littlewood_paley.hpp"

#include <algorithm>
#include <cmath>

#include "osc/spaces/norms.hpp"
#include "osc/spectral/transform.hpp"
#include "osc/util/log.hpp"

namespace osc {
namespace {

double transition(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

bool is_inf(double v) { return std::isinf(v); }

SpectralField filtered(const SpectralField& f, const std::vector<double>& mult) {
  SpectralField out(f.grid(), f.components(), f.is_real());
  for (int c = 0; c < f.components(); ++c) {
    auto src = f.component(c);
    auto dst = out.component(c);
    for (std::size_t k = 0; k < src.size(); ++k) dst[k] = mult[k] * src[k];
  }
  return out;
}

std::vector<double> multiplier(const Grid& g, int j, bool low) {
  const auto& kabs = g.kabs();
  std::vector<double> m(kabs.size());
  for (std::size_t k = 0; k < kabs.size(); ++k) m[k] = low ? lp_cutoff(kabs[k]) : lp_annulus(kabs[k], j);
  return m;
}

template <typename Fn>
void for_each_block(const SpectralField& f, bool homogeneous, bool* mean_excluded, Fn&& fn) {
  const BlockRange r = lp_block_range(f.grid(), homogeneous);
  if (homogeneous) {
    bool excluded = false;
    for (int c = 0; c < f.components(); ++c) excluded = excluded || std::abs(f.component(c)[0]) > 0.0;
    if (excluded) log().debug("homogeneous norm: k=0 mode excluded");
    if (mean_excluded != nullptr) *mean_excluded = excluded;
  } else {
    if (mean_excluded != nullptr) *mean_excluded = false;
    fn(0, true, filtered(f, multiplier(f.grid(), 0, true)));
  }
  for (int j = r.j_min; j <= r.j_max; ++j) fn(j, false, filtered(f, multiplier(f.grid(), j, false)));
}

}  // namespace

double lp_cutoff(double r) {
  if (r <= 1.0) return 1.0;
  if (r >= 2.0) return 0.0;
  const double a = transition(2.0 - r);
  const double b = transition(r - 1.0);
  return a / (a + b);
}

double lp_annulus(double kabs, int j) {
  return lp_cutoff(kabs / std::ldexp(1.0, j)) - lp_cutoff(kabs / std::ldexp(1.0, j - 1));
}

BlockRange lp_block_range(const Grid& grid, bool homogeneous) {
  const int j_max = static_cast<int>(std::ceil(std::log2(grid.k_max()) - 1e-12));
  const int j_min = homogeneous ? static_cast<int>(std::floor(std::log2(grid.dk()) + 1e-12)) : 1;
  return {j_min, std::max(j_min, j_max)};
}

LPDecomposition lp_decompose(const SpectralField& f, bool homogeneous) {
  const BlockRange r = lp_block_range(f.grid(), homogeneous);
  LPDecomposition d{homogeneous, r.j_min, r.j_max, false, {}};
  for_each_block(f, homogeneous, &d.mean_excluded, [&](int j, bool low, SpectralField&& block) {
    d.blocks.push_back({j, low, std::move(block)});
  });
  return d;
}

std::vector<BlockNorm> lp_block_norms(const SpectralField& f, double p, bool homogeneous,
                                      bool* mean_excluded) {
  std::vector<BlockNorm> out;
  for_each_block(f, homogeneous, mean_excluded, [&](int j, bool low, SpectralField&& block) {
    out.push_back({j, low, is_inf(p) ? linf_norm(block) : lp_norm(block, p)});
  });
  return out;
}

double besov_from_blocks(const std::vector<BlockNorm>& blocks, double s, double q) {
  double acc = 0.0;
  for (const auto& b : blocks) {
    const double w = b.low ? b.value : std::pow(2.0, b.j * s) * b.value;
    if (is_inf(q)) {
      acc = std::max(acc, w);
    } else {
      acc += std::pow(w, q);
    }
  }
  return is_inf(q) ? acc : std::pow(acc, 1.0 / q);
}

double besov_norm(const SpectralField& f, double s, double p, double q, bool homogeneous,
                  bool* mean_excluded) {
  return besov_from_blocks(lp_block_norms(f, p, homogeneous, mean_excluded), s, q);
}

}  // namespace osc
