#include "mtd/sampling.hpp"

#include "mtd/errors.hpp"
#include "mtd/likelihood.hpp"

namespace mtd {

std::size_t Rng::categorical(std::span<const double> probs) noexcept {
  double u = uniform();
  for (std::size_t i = 0; i + 1 < probs.size(); ++i) {
    if (u < probs[i]) return i;
    u -= probs[i];
  }
  // Rounding slack lands on the last category with positive mass.
  for (std::size_t i = probs.size(); i-- > 0;)
    if (probs[i] > 0.0) return i;
  return probs.size() - 1;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer over the pair
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

template <class RowFn>
Sequence sample_impl(const Alphabet& alphabet, int m, std::size_t length, std::uint64_t seed, const SampleInit& init,
                     RowFn&& row_of) {
  const std::size_t q = alphabet.size();
  if (length < static_cast<std::size_t>(m))
    throw Error(ErrorKind::ShapeMismatch, "length " + std::to_string(length) + " is shorter than the order");
  if (!init.prefix.empty() && init.prefix.size() != static_cast<std::size_t>(m))
    throw Error(ErrorKind::ShapeMismatch, "prefix must have exactly m letters");

  Rng rng(seed);
  std::vector<Symbol> data;
  data.reserve(length);
  if (init.prefix.empty()) {
    for (int i = 0; i < m; ++i) data.push_back(static_cast<Symbol>(rng.next() % q));
  } else {
    for (Symbol s : init.prefix) {
      if (s >= q) throw Error(ErrorKind::InvalidSymbol, "prefix symbol out of range");
      data.push_back(s);
    }
  }

  std::uint64_t span = 1;
  for (int i = 0; i < m; ++i) span *= q;
  std::uint64_t history = 0;
  for (Symbol s : data) history = history * q + s;
  std::vector<double> row(q);
  while (data.size() < length) {
    row_of(history, std::span<double>(row));
    const auto next = static_cast<Symbol>(rng.categorical(row));
    data.push_back(next);
    history = (history * q + next) % span;
  }
  return Sequence(alphabet, std::move(data));
}

std::vector<double> random_simplex(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  double sum = 0.0;
  for (auto& x : v) sum += (x = rng.uniform());
  for (auto& x : v) x /= sum;
  return v;
}

StochasticMatrix random_stochastic(Rng& rng, std::size_t rows, std::size_t cols) {
  StochasticMatrix out(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto v = random_simplex(rng, cols);
    std::copy(v.begin(), v.end(), out.row(r).begin());
  }
  return out;
}

}  // namespace

Sequence sample_sequence(const MtdModel& model, std::size_t length, std::uint64_t seed, const SampleInit& init) {
  return sample_impl(model.alphabet(), model.order(), length, seed, init, [&](std::uint64_t h, std::span<double> row) {
    for (std::size_t j = 0; j < row.size(); ++j) row[j] = transition_prob(model, h, static_cast<Symbol>(j));
  });
}

Sequence sample_sequence(const FullMarkovModel& model, std::size_t length, std::uint64_t seed,
                         const SampleInit& init) {
  return sample_impl(model.alphabet, model.order, length, seed, init, [&](std::uint64_t h, std::span<double> row) {
    const auto src = model.table.row(h);
    std::copy(src.begin(), src.end(), row.begin());
  });
}

MtdModel random_mtd(const Alphabet& alphabet, int order, int lag_order, Variant variant, std::uint64_t seed) {
  if (order < 1 || lag_order < 1 || lag_order > order)
    throw Error(ErrorKind::InvalidModel, "random_mtd requires 1 <= l <= m");
  Rng rng(seed);
  const auto G = static_cast<std::size_t>(order - lag_order + 1);
  const auto rows = checked_power(alphabet.size(), lag_order);
  auto phi = random_simplex(rng, G);
  std::vector<StochasticMatrix> matrices;
  const std::size_t count = variant == Variant::SingleMatrix ? 1 : G;
  for (std::size_t g = 0; g < count; ++g) matrices.push_back(random_stochastic(rng, rows, alphabet.size()));
  return MtdModel(alphabet, order, lag_order, variant, std::move(phi), std::move(matrices));
}

FullMarkovModel random_full_markov(const Alphabet& alphabet, int order, std::uint64_t seed) {
  Rng rng(seed);
  const auto rows = checked_power(alphabet.size(), order, kMaxTableEntries);
  return FullMarkovModel(alphabet, order, random_stochastic(rng, rows, alphabet.size()));
}

}  // namespace mtd
