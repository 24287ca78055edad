#pragma once

#include <json.hpp>
#include <map>
#include <string>
#include <vector>

#include "osc/verify/corpus.hpp"

namespace osc {

struct RatioRow {
  std::string member;
  std::string quantity;
  double t = 0.0;
  double param = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

struct QuantityStat {
  double max_ratio = 0.0;
  std::string argmax;     // member attaining the maximum
  double frozen = 0.0;    // calibrated constant (0 when none)
  bool has_frozen = false;
  bool pass = true;
};

// Ratio table of one lemma. Every quantity carries its own constant; a
// quantity passes when max_ratio <= 1.05 * frozen.
struct BoundReport {
  std::string lemma;
  std::vector<RatioRow> rows;
  std::map<std::string, QuantityStat> quantities;
  // Lemma-specific side results (cancellation integrals, fitted exponents).
  nlohmann::json extras = nlohmann::json::object();
  // Checks with fixed tolerances (not calibrated); all must hold.
  std::map<std::string, bool> checks;

  void add(RatioRow row);
  double max_ratio() const;
  bool pass() const;
  std::string csv() const;
  nlohmann::json summary() const;
};

inline constexpr double kCalibrationSlack = 1.05;

// Default parameter lists.
std::vector<double> default_times();

// sup_t (||u||_X + t^{1/2}||grad u||_inf + t||grad^2 u||_inf + t||u_t||_inf) / ||u0||_X
// for X = BMO and bmo, each term also reported alone.
BoundReport verify_semigroup_bmo(const TestCorpus& corpus, const std::vector<double>& times);
// t^a ||(-Delta)^a e^{t Delta} f||_inf / ||f||_BMO.
BoundReport verify_frac_heat(const TestCorpus& corpus, const std::vector<double>& alphas,
                             const std::vector<double>& times);

struct BesovParams {
  double s0;
  double s1;
  double p;
  double q;
};
std::vector<BesovParams> default_besov_params();
// The four heat-smoothing estimates between Besov spaces. Throws
// std::invalid_argument when s0 > s1.
BoundReport verify_besov_holder(const TestCorpus& corpus, const std::vector<BesovParams>& params,
                                const std::vector<double>& times);
// B0_inf_inf / bmo, bmo / L^inf, BMO / bmo and hom B0_inf_inf / BMO.
BoundReport verify_embeddings(const TestCorpus& corpus);
// u_t - Delta u = div f, u(0) = u0, f time-independent and band-limited:
// ||grad^k u(t)||_inf / (t^{-k/2} ||u0||_BMO + t ||grad^{k+1} f||_inf), k = 1, 2, 3.
BoundReport verify_duhamel_analytic(const TestCorpus& corpus, const std::vector<double>& times);

struct CzParams {
  std::vector<int> powers{1, 2};
  std::vector<double> exponents{1.0, 2.0};  // L^p exponents
  std::vector<double> times{0.3, 0.1, 0.03};
  int sample_points = 4;  // decomposition points besides the maximizer
};
BoundReport verify_cz_orlicz(const TestCorpus& corpus, const CzParams& params = {});

// d = 3: ||BS(w)||_inf / (||w||_inf + ||w||_p) on divergence-free fields
// built from the corpus.
BoundReport verify_velocity_recovery(const TestCorpus& corpus, const std::vector<double>& exponents = {1.0, 2.0});

// Lemma identifiers accepted by run_lemma.
const std::vector<std::string>& lemma_ids();
BoundReport run_lemma(const std::string& id, const TestCorpus& corpus);

}  // namespace osc
