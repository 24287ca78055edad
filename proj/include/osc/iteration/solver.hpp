#pragma once

#include <array>
#include <functional>
#include <json.hpp>
#include <string>
#include <vector>

#include "osc/iteration/forcing.hpp"
#include "osc/spectral/field.hpp"

namespace osc {

enum class Mode { velocity, vorticity };

// t_0 = 0 followed by count - 1 geometric points from first * T to T, merged
// with any extra times in (0, T].
std::vector<double> snapshot_times(double T, int count = 64, double first = 1e-3,
                                   const std::vector<double>& extra = {});

struct IterationConfig {
  // u0 (velocity mode) or w0 (vorticity mode): real, divergence-free d-vector.
  SpectralField initial;
  double T = 1.0;
  std::vector<double> times;  // empty: snapshot_times(T)
  std::array<double, 3> alpha{};
  ForcingSpec forcing;
  Mode mode = Mode::velocity;
  double p = 2.0;  // vorticity L^p exponent
  int max_iterations = 40;
  double tolerance = 1e-10;
  // Constant C of the monitor bound.
  double C = 1.0;
  double inner_tolerance = 1e-10;
  int inner_max_iterations = 100;
  double blowup = 1e6;
  int residual_probes = 8;

  explicit IterationConfig(SpectralField u0) : initial(std::move(u0)) {}
  const Grid& grid() const { return initial.grid(); }
  double alpha_norm() const;
};

// Per-iterate monitors. Velocity: linf = L_n, b0 = L'_n, bmo = L''_n,
// fourth = L'''_n (phi2-weighted hom B^1_{inf,1}). Vorticity: K_n, K'_n, K''_n,
// K'''_n (L^p) and q = Q_n.
struct Monitors {
  int n = 0;
  double linf = 0.0;
  double b0 = 0.0;
  double bmo = 0.0;
  double fourth = 0.0;
  double q = 0.0;
  double max = 0.0;
  // sup_t phi1 ||X^n - X^{n-1}||_inf + same for the imaginary part; NaN at n = 0.
  double diff = 0.0;
  double im_linf = 0.0;       // sup_t ||V^n||_inf (or ||Z^n||_inf)
  double velocity_ratio = 0.0;  // vorticity: max ||U||_inf / (||W||_inf + ||W||_p)
  int inner_iterations = 0;
};

struct IterationState {
  Mode mode = Mode::velocity;
  int n = 0;
  std::vector<double> times;
  // (U, V) or (W, Z) at every snapshot.
  std::vector<SpectralField> re;
  std::vector<SpectralField> im;
  // Vorticity mode: recovered velocities (U, V).
  std::vector<SpectralField> vel_re;
  std::vector<SpectralField> vel_im;
  std::vector<Monitors> history;
  double pressure_defect = 0.0;    // worst relative gap of the two pressure forms
  double divergence_defect = 0.0;  // worst relative divergence of an iterate
};

struct ResidualRow {
  double t = 0.0;
  double absolute = 0.0;  // ||X - RHS(X)||_inf + ||Y - RHS(Y)||_inf
  double relative = 0.0;  // absolute / (||X||_inf + ||Y||_inf)
};

struct ConvergenceReport {
  Mode mode = Mode::velocity;
  bool converged = false;
  int iterations = 0;
  std::vector<Monitors> monitors;
  std::vector<double> contraction;  // diff_n / diff_{n-1}
  std::vector<ResidualRow> residuals;
  double residual_abs = 0.0;
  double residual_rel = 0.0;
  double monitor_bound = 0.0;
  bool monitor_bound_ok = false;
  double max_monitor = 0.0;
  double max_im_linf = 0.0;
  double max_velocity_ratio = 0.0;
  double pressure_defect = 0.0;
  double divergence_defect = 0.0;
  double gamma = 0.0;
  std::string verdict;

  nlohmann::json to_json() const;
  std::string monitors_csv() const;
  std::string residuals_csv() const;
};

using StepObserver = std::function<void(const IterationState&)>;

// Iterate 0: the coupled linear system with zero nonlinearity.
IterationState init_iterate(const IterationConfig& config);
// Iterate n + 1 from iterate n. Throws DivergenceError past the blow-up guard.
IterationState step_iterate(const IterationState& state, const IterationConfig& config);

// Picard iteration until the phi1-weighted sup difference drops to the
// tolerance or max_iterations is reached.
std::pair<IterationState, ConvergenceReport> run_iteration(const IterationConfig& config,
                                                           const StepObserver& observer = {});
std::pair<IterationState, ConvergenceReport> run_vorticity(const IterationConfig& config,
                                                           const StepObserver& observer = {});

// Mild-equation residual of the final iterate at `probes` snapshot times, with
// the Duhamel integrals recomputed by Gauss-Legendre panels on the snapshot
// grid.
std::vector<ResidualRow> mild_residual(const IterationState& state, const IterationConfig& config,
                                       int probes);

// Velocity sources -[(U.grad)U - (V.grad)V] - grad Pi and
// -[(U.grad)V + (V.grad)U] - grad R.
ComplexPair velocity_sources(const SpectralField& u, const SpectralField& v);
// Relative gap between the explicit pressure form and -P div(UU - VV).
double pressure_consistency(const SpectralField& u, const SpectralField& v);
// Vorticity sources N_W and N_Z (d = 3), velocities from Biot-Savart.
ComplexPair vorticity_sources(const SpectralField& w, const SpectralField& z);

// Monitor bound: velocity (2C T^{1/2} Psi2(T))^{-1}; vorticity
// (2C T Psi1w(T))^{-1} for p > 1 and (2C T^{1/2} Psi2w(T))^{-1} for p = 1.
double monitor_bound(const IterationConfig& config);

const char* mode_name(Mode m);

}  // namespace osc
