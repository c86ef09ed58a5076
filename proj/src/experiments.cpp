#include "mtd/experiments.hpp"

#include <algorithm>
#include <ostream>

#include "mtd/errors.hpp"
#include "mtd/io.hpp"
#include "mtd/sampling.hpp"
#include "mtd/word_distribution.hpp"

namespace mtd {

TvExperimentResult tv_experiment(const TvExperimentConfig& config) {
  if (config.replicates < 0) throw Error(ErrorKind::InvalidModel, "replicate count must be nonnegative");
  if (config.fit_orders.empty()) throw Error(ErrorKind::InvalidModel, "need at least one fit order");
  for (int k : config.fit_orders)
    if (k < 0) throw Error(ErrorKind::InvalidModel, "fit orders must be nonnegative");

  TvExperimentResult result;
  result.mean_tv.assign(config.fit_orders.size(), 0.0);
  if (config.replicates == 0) return result;

  const auto generator = random_full_markov(config.alphabet, config.generator_order, derive_seed(config.seed, 0));
  const auto truth = word_distribution(generator, config.word_length);
  const std::uint64_t sample_stream = derive_seed(config.seed, 1);

  for (int r = 0; r < config.replicates; ++r) {
    const std::vector<Sequence> corpus{
        sample_sequence(generator, config.length, derive_seed(sample_stream, static_cast<std::uint64_t>(r)))};
    double best_tv = 0.0;
    int best_order = config.fit_orders.front();
    for (std::size_t i = 0; i < config.fit_orders.size(); ++i) {
      const int k = config.fit_orders[i];
      const auto fitted = fit_full_markov(count_ngrams(corpus, k));
      const double tv = tv_distance(word_distribution(fitted, config.word_length), truth);
      result.rows.push_back({r, k, tv});
      result.mean_tv[i] += tv / config.replicates;
      if (i == 0 || tv < best_tv) {
        best_tv = tv;
        best_order = k;
      }
    }
    result.best_order_by_replicate.push_back(best_order);
  }
  return result;
}

void write_tv_table(std::ostream& out, const TvExperimentConfig& config, const TvExperimentResult& result) {
  out << "replicate\tfit_order\ttv\n";
  for (const auto& row : result.rows) out << row.replicate << '\t' << row.fit_order << '\t' << format_double(row.tv) << '\n';
  if (result.rows.empty()) return;
  for (std::size_t i = 0; i < config.fit_orders.size(); ++i)
    out << "mean\t" << config.fit_orders[i] << '\t' << format_double(result.mean_tv[i]) << '\n';
}

std::vector<BicRow> bic_compare(std::span<const Sequence> corpus, const BicCompareConfig& config) {
  if (corpus.empty()) throw Error(ErrorKind::EmptyCorpus, "bic-compare needs a corpus");
  const std::size_t q = corpus.front().alphabet.size();
  std::uint64_t raw_length = 0;
  for (const auto& s : corpus) raw_length += s.size();

  std::vector<BicRow> rows;
  for (int m : config.orders) {
    const auto counts = count_ngrams(corpus, m);
    if (counts.empty()) throw Error(ErrorKind::EmptyCorpus, "no (m+1)-words at order " + std::to_string(m));
    const std::uint64_t n = config.raw_length ? raw_length : counts.total();
    const auto full = fit_full_markov(counts);
    const double loglik_full = counts_loglik(full, counts).value;
    const std::uint64_t dim_full = dim_full_markov(m, q);
    for (int l : config.lag_orders) {
      if (l > m) continue;
      if (config.em.variant == Variant::SingleMatrix && l != 1) continue;
      EmConfig em = config.em;
      em.lag_order = l;
      const FitReport fit = fit_with_restarts(counts, em);
      BicRow row{m, l, n, loglik_full, dim_full, bic(loglik_full, dim_full, n),
                 fit.final_loglik, fit.dimension, bic(fit.final_loglik, fit.dimension, n), 0.0};
      row.delta_bic = row.bic_full - row.bic_mtd;
      rows.push_back(row);
    }
  }
  return rows;
}

void write_bic_table(std::ostream& out, std::span<const BicRow> rows) {
  out << "order\tlag_order\tn\tloglik_full\tdim_full\tbic_full\tloglik_mtd\tdim_mtd\tbic_mtd\tdelta_bic\n";
  for (const auto& r : rows) {
    out << r.order << '\t' << r.lag_order << '\t' << r.n << '\t' << format_double(r.loglik_full) << '\t' << r.dim_full
        << '\t' << format_double(r.bic_full) << '\t' << format_double(r.loglik_mtd) << '\t' << r.dim_mtd << '\t'
        << format_double(r.bic_mtd) << '\t' << format_double(r.delta_bic) << '\n';
  }
}

}  // namespace mtd
