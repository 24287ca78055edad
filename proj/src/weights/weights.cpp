#include "osc/weights/weights.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "osc/semigroup/quadrature.hpp"
#include "osc/util/format.hpp"
#include "osc/util/parallel.hpp"

namespace osc::weights {
namespace {

constexpr double kE = std::numbers::e;

void check_t(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("weights need finite t > 0");
}

double log_weight(double r) { return std::log(kE + 1.0 / r); }

// t - s, kept positive where the node sits within round-off of t.
double gap(double t, double s) { return std::max(t - s, t * 1e-32); }

double integrate(double t, double a, double b, const std::function<double(double)>& h) {
  const auto& q = quadrature_settings();
  return QuadratureRule::build(t, a, b, q.nodes_per_panel, q.levels, q.ratio).integrate(h);
}

std::size_t column_index(std::string_view name) {
  for (std::size_t i = 0; i < kColumns.size(); ++i) {
    if (kColumns[i] == name) return i;
  }
  throw std::invalid_argument("unknown weight '" + std::string(name) + "'");
}

}  // namespace

const QuadratureSettings& quadrature_settings() {
  static const QuadratureSettings s;
  return s;
}

double phi1(double t) {
  check_t(t);
  return 1.0 / log_weight(t);
}

double phi2(double t) {
  check_t(t);
  return std::sqrt(t);
}

double psi1(double t) {
  check_t(t);
  return integrate(t, 0.0, 0.0, [t](double s) { return log_weight(gap(t, s)); }) / t;
}

double psi2(double t) {
  check_t(t);
  return integrate(t, 0.0, 0.5, [t](double s) { return log_weight(gap(t, s)); }) / std::sqrt(t);
}

double psi3(double t) { return phi1(t) * psi1(t); }

double psi4(double t) {
  check_t(t);
  const double i = integrate(t, 0.0, 0.5, [](double s) {
    const double l = log_weight(s);
    return l * l;
  });
  return phi1(t) * i / std::sqrt(t);
}

double psi5(double t) {
  check_t(t);
  return integrate(t, 0.5, 0.5, [](double s) { return log_weight(s); });
}

double Psi1(double t) { return std::max({1.0, psi1(t), psi3(t)}); }

double Psi2(double t) {
  const double p1 = phi1(t);
  const double p2 = psi2(t);
  const double p4 = psi4(t);
  return std::max({p2, p4, psi5(t), p1 * p2, p4 / p1});
}

double Psi1_omega(double t) {
  check_t(t);
  const double i = integrate(t, 0.0, 0.0, [t](double s) {
    const double l = log_weight(s);
    return log_weight(gap(t, s)) * (l + l * l);
  });
  return std::max(1.0, i / t);
}

double Psi2_omega(double t) {
  check_t(t);
  const double i = integrate(t, 0.0, 0.5, [](double s) { return log_weight(s); });
  return std::max(1.0, i / std::sqrt(t));
}

double Phi1(double r) { return std::max(1.0, std::log(kE + r)); }

double Phi2(double t) { return std::min(1.0, 1.0 / psi2(t)); }

double weight(std::string_view name, double t) {
  check_t(t);
  switch (column_index(name)) {
    case 0: return phi1(t);
    case 1: return phi2(t);
    case 2: return psi1(t);
    case 3: return psi2(t);
    case 4: return psi3(t);
    case 5: return psi4(t);
    case 6: return psi5(t);
    case 7: return Psi1(t);
    default: return Psi2(t);
  }
}

WeightTable::WeightTable(double t_max, double t_min, int points) {
  if (!(t_min > 0.0) || !(t_max > t_min) || points < 4) {
    throw std::invalid_argument("weight table needs 0 < t_min < t_max and >= 4 points");
  }
  t_.resize(points);
  const double ratio = std::log(t_max / t_min) / (points - 1);
  for (int i = 0; i < points; ++i) t_[i] = t_min * std::exp(ratio * i);
  t_.back() = t_max;
  for (auto& c : cols_) c.resize(points);
  parallel_for(t_.size(), [&](std::size_t i) {
    const double t = t_[i];
    const double p1 = phi1(t);
    const double q1 = psi1(t);
    const double q2 = psi2(t);
    const double q4 = psi4(t);
    const double q5 = psi5(t);
    cols_[0][i] = p1;
    cols_[1][i] = phi2(t);
    cols_[2][i] = q1;
    cols_[3][i] = q2;
    cols_[4][i] = p1 * q1;
    cols_[5][i] = q4;
    cols_[6][i] = q5;
    cols_[7][i] = std::max({1.0, q1, p1 * q1});
    cols_[8][i] = std::max({q2, q4, q5, p1 * q2, q4 / p1});
  });
}

const std::vector<double>& WeightTable::column(std::string_view name) const {
  return cols_[column_index(name)];
}

double WeightTable::value(std::string_view name, double t) const {
  check_t(t);
  if (t < t_.front() || t > t_.back()) return weight(name, t);
  const auto& col = column(name);
  const auto it = std::lower_bound(t_.begin(), t_.end(), t);
  const std::ptrdiff_t hi = it - t_.begin();
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(t_.size());
  const std::ptrdiff_t first = std::clamp<std::ptrdiff_t>(hi - 2, 0, n - 4);
  const double x = std::log(t);
  double acc = 0.0;
  for (std::ptrdiff_t i = first; i < first + 4; ++i) {
    double l = 1.0;
    const double xi = std::log(t_[i]);
    for (std::ptrdiff_t j = first; j < first + 4; ++j) {
      if (j != i) l *= (x - std::log(t_[j])) / (xi - std::log(t_[j]));
    }
    acc += l * std::log(col[i]);
  }
  return std::exp(acc);
}

std::string WeightTable::to_csv() const {
  std::ostringstream os;
  os << "t";
  for (auto c : kColumns) os << ',' << c;
  os << '\n';
  for (std::size_t i = 0; i < t_.size(); ++i) {
    os << fmt17(t_[i]);
    for (const auto& c : cols_) os << ',' << fmt17(c[i]);
    os << '\n';
  }
  return os.str();
}

nlohmann::json WeightTable::metadata() const {
  const auto& q = quadrature_settings();
  return {{"t_min", t_.front()},
          {"t_max", t_.back()},
          {"points", t_.size()},
          {"spacing", "geometric"},
          {"interpolation", "cubic Lagrange in (ln t, ln w)"},
          {"quadrature",
           {{"rule", "graded Gauss-Legendre, split at t/2, square-root substitution"},
            {"nodes_per_panel", q.nodes_per_panel},
            {"levels", q.levels},
            {"ratio", q.ratio}}}};
}

}  // namespace osc::weights
