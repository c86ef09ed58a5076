#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "mtd/em.hpp"
#include "mtd/model.hpp"

namespace mtd {

// Total-variation study: one random full Markov generator, `replicates`
// sampled sequences, a full-Markov MLE per fit order, distance measured on
// words of length word_length under the stationary laws.
struct TvExperimentConfig {
  Alphabet alphabet = Alphabet::from_letters("acgt");
  int generator_order = 5;
  std::size_t length = 5000;
  std::vector<int> fit_orders = {2, 3, 4, 5, 6};
  int replicates = 20;
  int word_length = 6;
  std::uint64_t seed = 1;
};

struct TvRow {
  int replicate;
  int fit_order;
  double tv;
};

struct TvExperimentResult {
  std::vector<TvRow> rows;
  std::vector<double> mean_tv;            // parallel to config.fit_orders
  std::vector<int> best_order_by_replicate;
};

TvExperimentResult tv_experiment(const TvExperimentConfig& config);
void write_tv_table(std::ostream& out, const TvExperimentConfig& config, const TvExperimentResult& result);

struct BicCompareConfig {
  std::vector<int> orders = {1, 2, 3};
  std::vector<int> lag_orders = {1};
  EmConfig em;
  // Use raw sequence length for the BIC log n instead of the number of terms.
  bool raw_length = false;
};

struct BicRow {
  int order;
  int lag_order;
  std::uint64_t n;
  double loglik_full;
  std::uint64_t dim_full;
  double bic_full;
  double loglik_mtd;
  std::uint64_t dim_mtd;
  double bic_mtd;
  // BIC(full) - BIC(MTD); positive means the MTD model is preferred.
  double delta_bic;
};

std::vector<BicRow> bic_compare(std::span<const Sequence> corpus, const BicCompareConfig& config);
void write_bic_table(std::ostream& out, std::span<const BicRow> rows);

}  // namespace mtd
