#pragma once

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "mtd/model.hpp"

namespace mtd {

class NGramCounts;

inline constexpr std::uint64_t kMaxTableEntries = 100'000'000;

// sum_g phi_g * pi_g(block_g, next). The history is given oldest first.
double transition_prob(const MtdModel& model, std::span<const Symbol> history, Symbol next);
double transition_prob(const MtdModel& model, std::uint64_t history, Symbol next) noexcept;

// Expands to the q^m x q table. Throws ModelTooLarge past kMaxTableEntries.
FullMarkovModel full_transition_matrix(const MtdModel& model);

// Conditional log-likelihood given the first m letters. A zero probability at
// an observed position yields value = -inf and lists the offending words.
struct LogLikelihood {
  double value = 0.0;
  std::uint64_t terms = 0;
  std::vector<std::string> zero_probability_words;

  bool finite() const noexcept { return value > -std::numeric_limits<double>::infinity(); }
};

struct Sequence;

LogLikelihood sequence_loglik(const MtdModel& model, const Sequence& seq);
LogLikelihood sequence_loglik(const FullMarkovModel& model, const Sequence& seq);

// sum_w N(w) log p(w) over observed words in ascending index order.
LogLikelihood counts_loglik(const MtdModel& model, const NGramCounts& counts);
LogLikelihood counts_loglik(const FullMarkovModel& model, const NGramCounts& counts);

}  // namespace mtd
