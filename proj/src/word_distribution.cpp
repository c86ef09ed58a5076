#include "mtd/word_distribution.hpp"

#include <cmath>

#include "mtd/errors.hpp"
#include "mtd/likelihood.hpp"

namespace mtd {

std::vector<double> stationary_histories(const FullMarkovModel& model, const StationaryOptions& options) {
  const std::size_t q = model.q();
  const std::size_t states = model.table.rows();
  if (states == 1) return {1.0};
  std::vector<double> p(states, 1.0 / static_cast<double>(states));
  std::vector<double> next(states);
  for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t h = 0; h < states; ++h) {
      if (p[h] == 0.0) continue;
      const std::size_t shifted = (h * q) % states;
      const auto row = model.table.row(h);
      for (std::size_t j = 0; j < q; ++j) next[shifted + j] += p[h] * row[j];
    }
    double change = 0.0;
    for (std::size_t h = 0; h < states; ++h) change += std::abs(next[h] - p[h]);
    p.swap(next);
    if (change < options.tolerance) return p;
  }
  throw Error(ErrorKind::NonConvergentStationary,
              "power iteration did not converge in " + std::to_string(options.max_sweeps) + " sweeps");
}

WordDistribution word_distribution(const FullMarkovModel& model, int word_length, const StationaryOptions& options) {
  if (word_length < 1) throw Error(ErrorKind::ShapeMismatch, "word length must be positive");
  const std::size_t q = model.q();
  const std::uint64_t size = checked_power(q, word_length, kMaxTableEntries);
  const std::size_t states = model.table.rows();
  const auto stationary = stationary_histories(model, options);

  WordDistribution out{model.alphabet, word_length, {}};
  if (word_length <= model.order) {
    out.probs.assign(size, 0.0);
    for (std::size_t h = 0; h < states; ++h) out.probs[h % size] += stationary[h];
    return out;
  }
  std::vector<double> dist = stationary;
  for (int len = model.order; len < word_length; ++len) {
    std::vector<double> longer(dist.size() * q);
    for (std::size_t x = 0; x < dist.size(); ++x) {
      const auto row = model.table.row(x % states);
      for (std::size_t j = 0; j < q; ++j) longer[x * q + j] = dist[x] * row[j];
    }
    dist.swap(longer);
  }
  out.probs = std::move(dist);
  return out;
}

WordDistribution word_distribution(const MtdModel& model, int word_length, const StationaryOptions& options) {
  return word_distribution(full_transition_matrix(model), word_length, options);
}

double tv_distance(const WordDistribution& p, const WordDistribution& q) {
  if (p.word_length != q.word_length || !(p.alphabet == q.alphabet) || p.probs.size() != q.probs.size())
    throw Error(ErrorKind::ShapeMismatch, "word distributions differ in shape");
  double sum = 0.0;
  for (std::size_t i = 0; i < p.probs.size(); ++i) sum += std::abs(p.probs[i] - q.probs[i]);
  return sum;
}

FullMarkovModel fit_full_markov(const NGramCounts& counts) {
  const std::size_t q = counts.alphabet().size();
  const int m = counts.order();
  const std::uint64_t rows = checked_power(q, m, kMaxTableEntries / q);
  std::vector<double> tally(rows * q, 0.0);
  for (const auto& [word, n] : counts.entries()) tally[word] += static_cast<double>(n);
  StochasticMatrix table(rows, q);
  for (std::uint64_t h = 0; h < rows; ++h) {
    double total = 0.0;
    for (std::size_t j = 0; j < q; ++j) total += tally[h * q + j];
    for (std::size_t j = 0; j < q; ++j)
      table(h, j) = total > 0.0 ? tally[h * q + j] / total : 1.0 / static_cast<double>(q);
  }
  return FullMarkovModel(counts.alphabet(), m, std::move(table));
}

}  // namespace mtd
