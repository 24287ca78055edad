#pragma once

#include <vector>

#include "osc/spectral/field.hpp"

namespace osc {

// Smooth radial cutoff: 1 on r <= 1, 0 on r >= 2, C-infinity in between.
double lp_cutoff(double r);
// Annulus multiplier cutoff(|k|/2^j) - cutoff(|k|/2^(j-1)), supported in
// 2^(j-1) < |k| < 2^(j+1).
double lp_annulus(double kabs, int j);

struct LPBlock {
  int j;
  bool low;  // the inhomogeneous low-frequency ball block (cutoff(|k|))
  SpectralField field;
};

struct LPDecomposition {
  bool homogeneous;
  int j_min;
  int j_max;
  // Homogeneous decompositions drop the k=0 mode; set when it was nonzero.
  bool mean_excluded = false;
  std::vector<LPBlock> blocks;
};

struct BlockRange {
  int j_min;
  int j_max;
};

// Homogeneous: j_min = floor(log2 dk), j_max = ceil(log2 k_max).
// Inhomogeneous: low block, then j = 1 .. j_max.
BlockRange lp_block_range(const Grid& grid, bool homogeneous);

LPDecomposition lp_decompose(const SpectralField& f, bool homogeneous);

// Sup norm (pointwise Euclidean magnitude) or L^p norm of every block.
struct BlockNorm {
  int j;
  bool low;
  double value;
};
std::vector<BlockNorm> lp_block_norms(const SpectralField& f, double p, bool homogeneous,
                                      bool* mean_excluded = nullptr);

// (sum_j (2^{js} ||block_j||_p)^q)^{1/q}; the low block carries weight 1.
// p and q may be infinity.
double besov_norm(const SpectralField& f, double s, double p, double q, bool homogeneous,
                  bool* mean_excluded = nullptr);
double besov_from_blocks(const std::vector<BlockNorm>& blocks, double s, double q);

}  // namespace osc
