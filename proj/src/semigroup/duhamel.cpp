#include "osc/semigroup/duhamel.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "osc/semigroup/operators.hpp"
#include "osc/simd/kernels.hpp"
#include "osc/util/parallel.hpp"

namespace osc {

double expint_phi1(double z) {
  if (std::abs(z) < 0.1) {
    // sum_{n>=0} (-z)^n / (n+1)!
    double term = 1.0;
    double sum = 1.0;
    for (int n = 1; n <= 10; ++n) {
      term *= -z / (n + 1);
      sum += term;
    }
    return sum;
  }
  return -std::expm1(-z) / z;
}

double expint_phi2(double z) {
  if (std::abs(z) < 0.1) {
    // sum_{n>=0} (-z)^n / (n+2)!
    double term = 0.5;
    double sum = 0.5;
    for (int n = 1; n <= 10; ++n) {
      term *= -z / (n + 2);
      sum += term;
    }
    return sum;
  }
  return (z + std::expm1(-z)) / (z * z);
}

SpectralField duhamel_integrate(const SourceProvider& source, double t, const QuadratureRule& rule) {
  if (t < 0.0) throw std::invalid_argument("Duhamel integral needs t >= 0");
  if (t == 0.0 || rule.nodes.empty()) {
    SpectralField zero = source(0.0);
    zero.set_zero();
    return zero;
  }
  std::vector<std::optional<SpectralField>> terms(rule.nodes.size());
  parallel_for(rule.nodes.size(), [&](std::size_t i) {
    SpectralField term = heat_apply(source(rule.nodes[i]), t - rule.nodes[i]);
    term *= rule.weights[i];
    terms[i] = std::move(term);
  });
  SpectralField acc = std::move(*terms[0]);
  for (std::size_t i = 1; i < terms.size(); ++i) acc += *terms[i];
  return acc;
}

SourceProvider interpolate_snapshots(const std::vector<SpectralField>& fields,
                                     const std::vector<double>& times) {
  if (fields.size() != times.size() || fields.empty()) {
    throw std::invalid_argument("snapshot/time count mismatch");
  }
  return [&fields, &times](double s) {
    if (s <= times.front()) return fields.front();
    if (s >= times.back()) return fields.back();
    const auto it = std::upper_bound(times.begin(), times.end(), s);
    const std::size_t hi = static_cast<std::size_t>(it - times.begin());
    const std::size_t lo = hi - 1;
    const double theta = (s - times[lo]) / (times[hi] - times[lo]);
    SpectralField out = fields[lo];
    out *= 1.0 - theta;
    out.axpy(theta, fields[hi]);
    return out;
  };
}

ExpStepWeights exp_step_weights(const Grid& grid, const std::vector<double>& times) {
  ExpStepWeights w;
  const auto& k2 = grid.k2();
  for (std::size_t m = 0; m + 1 < times.size(); ++m) {
    const double h = times[m + 1] - times[m];
    if (!(h > 0.0)) throw std::invalid_argument("snapshot times must increase");
    std::vector<double> decay(k2.size());
    std::vector<double> wa(k2.size());
    std::vector<double> wb(k2.size());
    for (std::size_t k = 0; k < k2.size(); ++k) {
      const double z = k2[k] * h;
      const double p1 = expint_phi1(z);
      const double p2 = expint_phi2(z);
      decay[k] = std::exp(-z);
      wa[k] = h * (p1 - p2);
      wb[k] = h * p2;
    }
    w.decay.push_back(std::move(decay));
    w.wa.push_back(std::move(wa));
    w.wb.push_back(std::move(wb));
  }
  return w;
}

std::vector<SpectralField> duhamel_snapshots(const std::vector<SpectralField>& sources,
                                             const ExpStepWeights& weights) {
  if (sources.size() != weights.decay.size() + 1) throw std::invalid_argument("snapshot count mismatch");
  std::vector<SpectralField> out;
  out.reserve(sources.size());
  SpectralField acc(sources.front().grid(), sources.front().components(), true);
  for (const auto& s : sources) acc.set_real(acc.is_real() && s.is_real());
  out.push_back(acc);
  for (std::size_t m = 0; m + 1 < sources.size(); ++m) {
    for (int c = 0; c < acc.components(); ++c) {
      simd::exp_step(acc.component(c), weights.decay[m], weights.wa[m], sources[m].component(c),
                     weights.wb[m], sources[m + 1].component(c));
    }
    out.push_back(acc);
  }
  return out;
}

std::vector<SpectralField> duhamel_snapshots(const std::vector<SpectralField>& sources,
                                             const std::vector<double>& times) {
  if (sources.size() != times.size() || sources.empty()) {
    throw std::invalid_argument("snapshot/time count mismatch");
  }
  return duhamel_snapshots(sources, exp_step_weights(sources.front().grid(), times));
}

}  // namespace osc
