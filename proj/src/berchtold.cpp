#include "mtd/berchtold.hpp"

#include <algorithm>

#include "mtd/errors.hpp"
#include "mtd/likelihood.hpp"

namespace mtd {

void BerchtoldConfig::validate() const {
  if (!(delta0 > 0.0 && delta0 <= 1.0)) throw Error(ErrorKind::InvalidModel, "delta0 must lie in (0, 1]");
  if (!(delta_decay > 0.0 && delta_decay < 1.0)) throw Error(ErrorKind::InvalidModel, "delta_decay must lie in (0, 1)");
  if (!(min_delta > 0.0)) throw Error(ErrorKind::InvalidModel, "min_delta must be positive");
  if (max_iters < 1) throw Error(ErrorKind::InvalidModel, "max_iters must be at least 1");
  if (!(epsilon > 0.0)) throw Error(ErrorKind::InvalidModel, "epsilon must be positive");
}

GradientSet loglik_gradient(const MtdModel& model, const NGramCounts& counts) {
  if (counts.order() != model.order()) throw Error(ErrorKind::ShapeMismatch, "counts word length must be m+1");
  const auto q = static_cast<WordIndex>(model.q());
  const std::size_t G = model.components();
  const bool shared = model.variant() == Variant::SingleMatrix;

  GradientSet grad;
  grad.d_phi.assign(G, 0.0);
  grad.d_pi.assign(shared ? 1 : G, StochasticMatrix(model.block_count(), model.q()));

  for (const auto& [word, n] : counts.entries()) {
    const std::uint64_t history = word / q;
    const auto next = word % q;
    const double p = transition_prob(model, history, static_cast<Symbol>(next));
    if (!(p > 0.0)) throw DegenerateLikelihoodError(counts.alphabet().spell(word, counts.word_length()), {});
    const double scale = static_cast<double>(n) / p;
    for (std::size_t g = 0; g < G; ++g) {
      const std::uint64_t block = model.block(history, g);
      grad.d_phi[g] += scale * model.matrix(g)(block, next);
      grad.d_pi[shared ? 0 : g](block, next) += scale * model.phi()[g];
    }
  }
  return grad;
}

std::vector<double> berchtold_step(std::span<const double> v, std::span<const double> gradient, double delta) {
  if (v.size() != gradient.size()) throw Error(ErrorKind::ShapeMismatch, "vector and gradient sizes differ");
  std::vector<double> out(v.begin(), v.end());
  if (v.empty()) return out;
  // max_element/min_element return the first extremum: lowest index on ties.
  const auto a = static_cast<std::size_t>(std::max_element(gradient.begin(), gradient.end()) - gradient.begin());
  const auto b = static_cast<std::size_t>(std::min_element(gradient.begin(), gradient.end()) - gradient.begin());
  if (a == b) return out;
  const double moved = std::min({delta, v[b], 1.0 - v[a]});
  if (!(moved > 0.0)) return out;
  out[a] = std::min(1.0, v[a] + moved);
  out[b] = std::max(0.0, v[b] - moved);
  return out;
}

FitReport berchtold_fit(const NGramCounts& counts, const MtdModel& init, const BerchtoldConfig& config) {
  config.validate();
  if (counts.empty()) throw Error(ErrorKind::EmptyCorpus, "cannot fit on empty counts");

  MtdModel current = init;
  double loglik = counts_loglik(current, counts).value;
  if (!(loglik > -std::numeric_limits<double>::infinity()))
    throw DegenerateLikelihoodError(counts_loglik(current, counts).zero_probability_words.front(), {loglik});

  FitReport report(init);
  report.loglik_trace.push_back(loglik);
  double delta = config.delta0;

  for (int it = 0; it < config.max_iters; ++it) {
    ++report.iterations;
    const GradientSet grad = loglik_gradient(current, counts);

    auto phi = berchtold_step(current.phi(), grad.d_phi, delta);
    std::vector<StochasticMatrix> matrices = current.matrices();
    for (std::size_t k = 0; k < matrices.size(); ++k) {
      auto& pi = matrices[k];
      for (std::size_t b = 0; b < pi.rows(); ++b) {
        const auto stepped = berchtold_step(pi.row(b), grad.d_pi[k].row(b), delta);
        std::copy(stepped.begin(), stepped.end(), pi.row(b).begin());
      }
    }
    MtdModel candidate(current.alphabet(), current.order(), current.lag_order(), current.variant(), std::move(phi),
                       std::move(matrices));
    const double candidate_loglik = counts_loglik(candidate, counts).value;

    if (candidate_loglik > loglik) {
      const double increase = candidate_loglik - loglik;
      current = std::move(candidate);
      loglik = candidate_loglik;
      report.loglik_trace.push_back(loglik);
      if (increase < config.epsilon) {
        report.converged = true;
        break;
      }
    } else {
      delta *= config.delta_decay;
      if (delta < config.min_delta) {
        report.converged = true;
        break;
      }
    }
  }

  report.model = std::move(current);
  report.final_loglik = loglik;
  finalize_report(report, counts, DimensionConvention::ThetaU);
  return report;
}

}  // namespace mtd
