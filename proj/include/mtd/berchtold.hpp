#pragma once

#include <span>
#include <vector>

#include "mtd/counts.hpp"
#include "mtd/em.hpp"
#include "mtd/model.hpp"

namespace mtd {

// Partial derivatives of the conditional log-likelihood. For single-matrix
// models d_pi holds one matrix, the sum over lags.
struct GradientSet {
  std::vector<double> d_phi;
  std::vector<StochasticMatrix> d_pi;  // entries are derivatives, not probabilities
};

struct BerchtoldConfig {
  double delta0 = 0.1;
  double delta_decay = 0.5;
  double min_delta = 1e-6;
  int max_iters = 10000;
  double epsilon = 1e-3;

  void validate() const;
};

GradientSet loglik_gradient(const MtdModel& model, const NGramCounts& counts);

// Moves min(delta, v[b], 1 - v[a]) from argmin b to argmax a of the gradient
// (ties resolved to the lowest index).
std::vector<double> berchtold_step(std::span<const double> v, std::span<const double> gradient, double delta);

// Accept-or-revert coordinate ascent: every iteration steps phi and each
// matrix row once from a single gradient evaluation. A rejected step halves
// delta (by delta_decay); the trace only records accepted iterates.
FitReport berchtold_fit(const NGramCounts& counts, const MtdModel& init, const BerchtoldConfig& config);

}  // namespace mtd
