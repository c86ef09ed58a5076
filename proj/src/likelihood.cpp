#include "mtd/likelihood.hpp"

#include <cmath>

#include "mtd/counts.hpp"
#include "mtd/errors.hpp"

namespace mtd {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void accumulate(LogLikelihood& ll, double p, std::uint64_t weight, const Alphabet& alphabet, WordIndex word,
                int word_length) {
  ll.terms += weight;
  if (p > 0.0) {
    if (ll.finite()) ll.value += static_cast<double>(weight) * std::log(p);
  } else {
    ll.value = kNegInf;
    auto spelled = alphabet.spell(word, word_length);
    if (ll.zero_probability_words.empty() || ll.zero_probability_words.back() != spelled)
      ll.zero_probability_words.push_back(std::move(spelled));
  }
}

template <class Model, class Prob>
LogLikelihood scan_sequence(const Model& model, const Sequence& seq, int m, Prob&& prob) {
  if (!(seq.alphabet == model.alphabet()))
    throw Error(ErrorKind::AlphabetMismatch, "sequence and model alphabets differ");
  LogLikelihood ll;
  const std::size_t n = seq.size();
  const auto q = static_cast<std::uint64_t>(seq.alphabet.size());
  if (n <= static_cast<std::size_t>(m)) return ll;
  std::uint64_t span = 1;
  for (int i = 0; i < m; ++i) span *= q;
  std::uint64_t history = 0;
  for (int i = 0; i < m; ++i) history = history * q + seq.data[static_cast<std::size_t>(i)];
  for (std::size_t t = static_cast<std::size_t>(m); t < n; ++t) {
    const Symbol next = seq.data[t];
    accumulate(ll, prob(history, next), 1, seq.alphabet, history * q + next, m + 1);
    history = (history * q + next) % span;
  }
  return ll;
}

struct FullAlphabetView {
  const FullMarkovModel& model;
  const Alphabet& alphabet() const { return model.alphabet; }
};

}  // namespace

double transition_prob(const MtdModel& model, std::uint64_t history, Symbol next) noexcept {
  double p = 0.0;
  const auto& phi = model.phi();
  for (std::size_t g = 0; g < phi.size(); ++g) p += phi[g] * model.matrix(g)(model.block(history, g), next);
  return p;
}

double transition_prob(const MtdModel& model, std::span<const Symbol> history, Symbol next) {
  if (history.size() != static_cast<std::size_t>(model.order()))
    throw Error(ErrorKind::ShapeMismatch, "history has " + std::to_string(history.size()) + " letters, model order is " +
                                              std::to_string(model.order()));
  if (next >= model.q()) throw Error(ErrorKind::InvalidSymbol, "next symbol " + std::to_string(next) + " out of range");
  return transition_prob(model, history_index(history, model.q()), next);
}

FullMarkovModel full_transition_matrix(const MtdModel& model) {
  const auto q = static_cast<std::uint64_t>(model.q());
  if (model.history_count() > kMaxTableEntries / q)
    throw Error(ErrorKind::ModelTooLarge, "q^(m+1) exceeds " + std::to_string(kMaxTableEntries) + " entries");
  StochasticMatrix table(model.history_count(), model.q());
  for (std::uint64_t h = 0; h < model.history_count(); ++h)
    for (Symbol j = 0; j < q; ++j) table(h, j) = transition_prob(model, h, j);
  return FullMarkovModel(model.alphabet(), model.order(), std::move(table));
}

LogLikelihood sequence_loglik(const MtdModel& model, const Sequence& seq) {
  return scan_sequence(model, seq, model.order(),
                       [&](std::uint64_t h, Symbol j) { return transition_prob(model, h, j); });
}

LogLikelihood sequence_loglik(const FullMarkovModel& model, const Sequence& seq) {
  return scan_sequence(FullAlphabetView{model}, seq, model.order,
                       [&](std::uint64_t h, Symbol j) { return model.table(h, j); });
}

LogLikelihood counts_loglik(const MtdModel& model, const NGramCounts& counts) {
  if (counts.order() != model.order()) throw Error(ErrorKind::ShapeMismatch, "counts word length must be m+1");
  if (!(counts.alphabet() == model.alphabet()))
    throw Error(ErrorKind::AlphabetMismatch, "counts and model alphabets differ");
  const auto q = static_cast<WordIndex>(model.q());
  LogLikelihood ll;
  for (const auto& [word, n] : counts.entries())
    accumulate(ll, transition_prob(model, word / q, static_cast<Symbol>(word % q)), n, counts.alphabet(), word,
               counts.word_length());
  return ll;
}

LogLikelihood counts_loglik(const FullMarkovModel& model, const NGramCounts& counts) {
  if (counts.order() != model.order) throw Error(ErrorKind::ShapeMismatch, "counts word length must be m+1");
  if (!(counts.alphabet() == model.alphabet))
    throw Error(ErrorKind::AlphabetMismatch, "counts and model alphabets differ");
  const auto q = static_cast<WordIndex>(model.q());
  LogLikelihood ll;
  for (const auto& [word, n] : counts.entries())
    accumulate(ll, model.table(word / q, word % q), n, counts.alphabet(), word, counts.word_length());
  return ll;
}

}  // namespace mtd
