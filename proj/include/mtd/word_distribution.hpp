#pragma once

#include <vector>

#include "mtd/counts.hpp"
#include "mtd/model.hpp"

namespace mtd {

// Law of a length-k window under the stationary chain, indexed like words
// (oldest letter most significant).
struct WordDistribution {
  Alphabet alphabet;
  int word_length;
  std::vector<double> probs;
};

struct StationaryOptions {
  double tolerance = 1e-12;
  int max_sweeps = 100'000;
};

// Stationary law of the q^m-state history chain by power iteration.
std::vector<double> stationary_histories(const FullMarkovModel& model, const StationaryOptions& options = {});

WordDistribution word_distribution(const FullMarkovModel& model, int word_length,
                                   const StationaryOptions& options = {});
WordDistribution word_distribution(const MtdModel& model, int word_length, const StationaryOptions& options = {});

// sum_x |P(x) - Q(x)|, range [0, 2].
double tv_distance(const WordDistribution& p, const WordDistribution& q);

// Row-normalized order-m counts; histories never seen get the uniform row.
FullMarkovModel fit_full_markov(const NGramCounts& counts);

}  // namespace mtd
