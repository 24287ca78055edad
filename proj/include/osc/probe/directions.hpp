#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace osc {

// Probe directions: +-e_i for each axis, then `random` seeded unit vectors.
inline std::vector<std::array<double, 3>> probe_directions(int dim, std::uint64_t seed = 20240917,
                                                           int random = 8) {
  std::vector<std::array<double, 3>> dirs;
  for (int i = 0; i < dim; ++i) {
    for (double s : {1.0, -1.0}) {
      std::array<double, 3> e{};
      e[i] = s;
      dirs.push_back(e);
    }
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  for (int r = 0; r < random; ++r) {
    std::array<double, 3> v{};
    double n2 = 0.0;
    while (n2 < 1e-12) {
      n2 = 0.0;
      for (int i = 0; i < dim; ++i) {
        v[i] = gauss(rng);
        n2 += v[i] * v[i];
      }
    }
    const double n = std::sqrt(n2);
    for (int i = 0; i < dim; ++i) v[i] /= n;
    dirs.push_back(v);
  }
  return dirs;
}

}  // namespace osc
