#pragma once

#include <array>
#include <string>
#include <vector>

#include "osc/spectral/field.hpp"

namespace osc {

struct DomainNormRow {
  double t = 0.0;
  double radius = 0.0;
  int direction = 0;
  double bmo_re = 0.0;
  double bmo_im = 0.0;
  double linf_re = 0.0;
  double linf_im = 0.0;
  bool overflow = false;
};

// For every radius r and direction e, evaluates (re + i im)(x + i r e) and
// records the bmo and L^inf norms of its real and imaginary parts. Overflowed
// evaluations are flagged and carry infinite norms.
std::vector<DomainNormRow> probe_domain_norms(const ComplexPair& pair, double t, const std::vector<double>& radii,
                                              const std::vector<std::array<double, 3>>& directions);
// Default directions: the axis directions and 8 seeded random ones.
std::vector<DomainNormRow> probe_domain_norms(const ComplexPair& pair, double t, const std::vector<double>& radii);

// Largest phi1(t) max(linf_re, linf_im) over rows that did not overflow.
double domain_sup_weighted_linf(const std::vector<DomainNormRow>& rows);

// Columns t, |y|, direction, bmo_re, bmo_im, linf_re, linf_im.
std::string domain_norms_csv(const std::vector<DomainNormRow>& rows);

}  // namespace osc
