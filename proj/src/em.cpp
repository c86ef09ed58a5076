#include "mtd/em.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mtd/errors.hpp"
#include "mtd/sampling.hpp"

namespace mtd {

PosteriorTable::PosteriorTable(std::vector<WordIndex> words, std::size_t components, std::vector<double> values)
    : words_(std::move(words)), components_(components), values_(std::move(values)) {
  if (values_.size() != words_.size() * components_) throw Error(ErrorKind::ShapeMismatch, "posterior table size");
}

void EmConfig::validate() const {
  if (!(epsilon > 0.0)) throw Error(ErrorKind::InvalidModel, "epsilon must be positive");
  if (max_iters < 1) throw Error(ErrorKind::InvalidModel, "max_iters must be at least 1");
  if (n_restarts < 1) throw Error(ErrorKind::InvalidModel, "n_restarts must be at least 1");
  if (floor && !(*floor > 0.0)) throw Error(ErrorKind::InvalidModel, "floor must be positive when set");
}

namespace {

void check_shapes(const MtdModel& model, const NGramCounts& counts) {
  if (counts.order() != model.order())
    throw Error(ErrorKind::ShapeMismatch, "counts word length " + std::to_string(counts.word_length()) +
                                              " does not match model order " + std::to_string(model.order()));
  if (!(counts.alphabet() == model.alphabet()))
    throw Error(ErrorKind::AlphabetMismatch, "counts and model alphabets differ");
}

}  // namespace

PosteriorTable e_step(const MtdModel& model, const NGramCounts& counts, std::optional<double> floor) {
  check_shapes(model, counts);
  const auto q = static_cast<WordIndex>(model.q());
  const std::size_t G = model.components();
  std::vector<WordIndex> words;
  std::vector<double> values;
  words.reserve(counts.distinct());
  values.reserve(counts.distinct() * G);
  std::vector<double> terms(G);
  for (const auto& entry : counts.entries()) {
    const WordIndex word = entry.first;
    const std::uint64_t history = word / q;
    const auto next = static_cast<std::size_t>(word % q);
    double denominator = 0.0;
    for (std::size_t g = 0; g < G; ++g) {
      terms[g] = model.phi()[g] * model.matrix(g)(model.block(history, g), next);
      if (floor) terms[g] = std::max(terms[g], *floor);
      denominator += terms[g];
    }
    if (!(denominator > 0.0)) throw DegenerateLikelihoodError(counts.alphabet().spell(word, counts.word_length()), {});
    words.push_back(word);
    for (double t : terms) values.push_back(t / denominator);
  }
  return PosteriorTable(std::move(words), G, std::move(values));
}

MtdModel m_step(const MtdModel& previous, const PosteriorTable& posteriors, const NGramCounts& counts) {
  check_shapes(previous, counts);
  const std::size_t G = previous.components();
  if (posteriors.components() != G || posteriors.size() != counts.distinct())
    throw Error(ErrorKind::ShapeMismatch, "posteriors do not cover the observed words");
  const auto q = static_cast<WordIndex>(previous.q());
  const std::size_t blocks = previous.block_count();
  const bool shared = previous.variant() == Variant::SingleMatrix;
  const std::size_t n_matrices = shared ? 1 : G;

  std::vector<double> phi_weight(G, 0.0);
  std::vector<std::vector<double>> numer(n_matrices, std::vector<double>(blocks * q, 0.0));

  std::size_t i = 0;
  for (const auto& [word, n] : counts.entries()) {
    if (posteriors.word(i) != word) throw Error(ErrorKind::ShapeMismatch, "posterior word order differs from counts");
    const auto post = posteriors.at(i++);
    const std::uint64_t history = word / q;
    const auto next = word % q;
    const auto weight = static_cast<double>(n);
    for (std::size_t g = 0; g < G; ++g) {
      const double w = post[g] * weight;
      phi_weight[g] += w;
      numer[shared ? 0 : g][previous.block(history, g) * q + next] += w;
    }
  }

  // The weights sum to counts.total() in exact arithmetic; dividing by their
  // own sum keeps phi on the simplex to rounding.
  double phi_total = 0.0;
  for (double w : phi_weight) phi_total += w;
  std::vector<double> phi(G);
  for (std::size_t g = 0; g < G; ++g) phi[g] = phi_weight[g] / phi_total;

  std::vector<StochasticMatrix> matrices;
  matrices.reserve(n_matrices);
  for (std::size_t k = 0; k < n_matrices; ++k) {
    StochasticMatrix pi = previous.matrix(k);
    for (std::size_t b = 0; b < blocks; ++b) {
      double denominator = 0.0;
      for (std::size_t j = 0; j < q; ++j) denominator += numer[k][b * q + j];
      if (!(denominator > 0.0)) continue;  // unobserved block: keep the previous row
      for (std::size_t j = 0; j < q; ++j) pi(b, j) = numer[k][b * q + j] / denominator;
    }
    matrices.push_back(std::move(pi));
  }
  return MtdModel(previous.alphabet(), previous.order(), previous.lag_order(), previous.variant(), std::move(phi),
                  std::move(matrices));
}

double q_function(const MtdModel& candidate, const PosteriorTable& posteriors, const NGramCounts& counts) {
  check_shapes(candidate, counts);
  const auto q = static_cast<WordIndex>(candidate.q());
  const std::size_t G = candidate.components();
  double total = 0.0;
  std::size_t i = 0;
  for (const auto& [word, n] : counts.entries()) {
    const auto post = posteriors.at(i++);
    const std::uint64_t history = word / q;
    const auto next = word % q;
    for (std::size_t g = 0; g < G; ++g) {
      const double w = post[g] * static_cast<double>(n);
      if (w == 0.0) continue;
      total += w * (std::log(candidate.phi()[g]) + std::log(candidate.matrix(g)(candidate.block(history, g), next)));
    }
  }
  return total;
}

MtdModel init_contingency(const NGramCounts& counts, int lag_order, Variant variant) {
  if (counts.empty()) throw Error(ErrorKind::EmptyCorpus, "cannot initialize from empty counts");
  const int m = counts.order();
  if (lag_order < 1 || lag_order > m) throw Error(ErrorKind::LagOutOfRange, "lag order must lie in [1, m]");
  const std::size_t q = counts.alphabet().size();
  const auto G = static_cast<std::size_t>(m - lag_order + 1);
  const std::size_t blocks = checked_power(q, lag_order);

  std::vector<std::vector<std::uint64_t>> tables;
  for (std::size_t g = 1; g <= G; ++g) tables.push_back(lag_contingency(counts, static_cast<int>(g), lag_order).cells);
  if (variant == Variant::SingleMatrix) {
    for (std::size_t g = 1; g < G; ++g)
      for (std::size_t c = 0; c < tables[0].size(); ++c) tables[0][c] += tables[g][c];
    tables.resize(1);
  }

  std::vector<StochasticMatrix> matrices;
  for (const auto& cells : tables) {
    StochasticMatrix pi(blocks, q);
    for (std::size_t b = 0; b < blocks; ++b) {
      double row_total = 0.0;
      for (std::size_t j = 0; j < q; ++j) row_total += static_cast<double>(cells[b * q + j]) + 1.0;
      for (std::size_t j = 0; j < q; ++j) pi(b, j) = (static_cast<double>(cells[b * q + j]) + 1.0) / row_total;
    }
    matrices.push_back(std::move(pi));
  }
  return MtdModel(counts.alphabet(), m, lag_order, variant, std::vector<double>(G, 1.0 / static_cast<double>(G)),
                  std::move(matrices));
}

MtdModel init_random(const Alphabet& alphabet, int order, int lag_order, Variant variant, std::uint64_t seed) {
  return random_mtd(alphabet, order, lag_order, variant, seed);
}

void finalize_report(FitReport& report, const NGramCounts& counts, DimensionConvention convention) {
  report.theta_u = to_theta_u(report.model, 0);
  report.dimension = model_dimension(report.model, convention);
  report.n_terms = counts.total();
  report.bic = bic(report.final_loglik, report.dimension, std::max<std::uint64_t>(report.n_terms, 1));
}

FitReport em_fit(const NGramCounts& counts, const MtdModel& init, const EmConfig& config) {
  config.validate();
  check_shapes(init, counts);
  if (counts.empty()) throw Error(ErrorKind::EmptyCorpus, "cannot fit on empty counts");

  FitReport report(init);
  double current = counts_loglik(init, counts).value;
  report.loglik_trace.push_back(current);

  MtdModel model = init;
  for (int k = 0; k < config.max_iters; ++k) {
    try {
      model = m_step(model, e_step(model, counts, config.floor), counts);
    } catch (DegenerateLikelihoodError& e) {
      e.set_partial_trace(report.loglik_trace);
      throw;
    }
    const double next = counts_loglik(model, counts).value;
    report.loglik_trace.push_back(next);
    ++report.iterations;
    const double increase = next - current;
    current = next;
    if (increase < config.epsilon) {
      report.converged = true;
      break;
    }
  }
  report.model = std::move(model);
  report.final_loglik = report.loglik_trace.back();
  finalize_report(report, counts, config.dimension);
  return report;
}

FitReport fit_with_restarts(const NGramCounts& counts, const EmConfig& config) {
  config.validate();
  if (counts.empty()) throw Error(ErrorKind::EmptyCorpus, "cannot fit on empty counts");
  std::optional<FitReport> best;
  std::ostringstream failures;
  for (int r = 0; r < config.n_restarts; ++r) {
    const MtdModel init =
        r == 0 ? init_contingency(counts, config.lag_order, config.variant)
               : init_random(counts.alphabet(), counts.order(), config.lag_order, config.variant,
                             derive_seed(config.seed, static_cast<std::uint64_t>(r)));
    try {
      FitReport report = em_fit(counts, init, config);
      report.restart_index = r;
      if (!best || report.final_loglik > best->final_loglik) best = std::move(report);
    } catch (const DegenerateLikelihoodError& e) {
      failures << " [restart " << r << ": " << e.what() << "]";
    }
  }
  if (!best) throw Error(ErrorKind::AllRestartsFailed, "every EM restart degenerated:" + failures.str());
  return std::move(*best);
}

}  // namespace mtd
