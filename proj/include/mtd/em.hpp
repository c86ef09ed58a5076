#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mtd/counts.hpp"
#include "mtd/likelihood.hpp"
#include "mtd/model.hpp"
#include "mtd/theta_u.hpp"

namespace mtd {

// P_S(g | w) for every observed (m+1)-word, stored word-major.
class PosteriorTable {
 public:
  PosteriorTable(std::vector<WordIndex> words, std::size_t components, std::vector<double> values);

  std::size_t size() const noexcept { return words_.size(); }
  std::size_t components() const noexcept { return components_; }
  WordIndex word(std::size_t i) const noexcept { return words_[i]; }
  std::span<const double> at(std::size_t i) const noexcept { return {values_.data() + i * components_, components_}; }

 private:
  std::vector<WordIndex> words_;
  std::size_t components_;
  std::vector<double> values_;
};

struct EmConfig {
  double epsilon = 1e-3;
  int max_iters = 1000;
  int n_restarts = 5;
  std::uint64_t seed = 1;
  // Lower bound applied to every phi_g * pi_g term before normalizing.
  std::optional<double> floor;
  Variant variant = Variant::General;
  int lag_order = 1;
  DimensionConvention dimension = DimensionConvention::ThetaU;

  void validate() const;
};

struct FitReport {
  explicit FitReport(MtdModel m) : model(std::move(m)) {}

  MtdModel model;
  std::vector<double> loglik_trace;
  double final_loglik = 0.0;
  int iterations = 0;
  bool converged = false;
  int restart_index = 0;
  std::optional<ThetaU> theta_u;
  std::uint64_t dimension = 0;
  std::uint64_t n_terms = 0;
  double bic = 0.0;
};

PosteriorTable e_step(const MtdModel& model, const NGramCounts& counts, std::optional<double> floor = std::nullopt);

// Closed-form maximizer of Q given posteriors. Rows whose weighted count is
// zero keep their value from `previous`.
MtdModel m_step(const MtdModel& previous, const PosteriorTable& posteriors, const NGramCounts& counts);

// Expected complete-data log-likelihood Q(candidate | posteriors); 0 log 0 = 0.
double q_function(const MtdModel& candidate, const PosteriorTable& posteriors, const NGramCounts& counts);

MtdModel init_contingency(const NGramCounts& counts, int lag_order, Variant variant);
MtdModel init_random(const Alphabet& alphabet, int order, int lag_order, Variant variant, std::uint64_t seed);

FitReport em_fit(const NGramCounts& counts, const MtdModel& init, const EmConfig& config);

// Restart 0 starts from init_contingency, restarts 1.. from init_random.
FitReport fit_with_restarts(const NGramCounts& counts, const EmConfig& config);

// Fills theta_u, dimension, n_terms and bic of a report from its model.
void finalize_report(FitReport& report, const NGramCounts& counts, DimensionConvention convention);

}  // namespace mtd
