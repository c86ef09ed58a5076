#include "mtd/theta_u.hpp"

#include <algorithm>
#include <cmath>

#include "mtd/errors.hpp"
#include "mtd/likelihood.hpp"

namespace mtd {

namespace {

std::uint64_t repeated(std::uint64_t digit, int length, std::uint64_t q) {
  std::uint64_t index = 0;
  for (int i = 0; i < length; ++i) index = index * q + digit;
  return index;
}

}  // namespace

ThetaU::ThetaU(Alphabet a, int m, int l, Symbol u, std::vector<StochasticMatrix> t, std::vector<double> b)
    : alphabet(std::move(a)), order(m), lag_order(l), reference(u), tables(std::move(t)), base(std::move(b)) {
  validate();
}

std::uint64_t ThetaU::reference_block() const { return repeated(reference, lag_order, alphabet.size()); }

void ThetaU::validate() const {
  const std::size_t q = alphabet.size();
  if (order < 1 || lag_order < 1 || lag_order > order) throw Error(ErrorKind::InvalidModel, "theta_u requires 1 <= l <= m");
  if (reference >= q) throw Error(ErrorKind::InvalidSymbol, "reference letter out of range");
  const auto G = static_cast<std::size_t>(order - lag_order + 1);
  if (tables.size() != G) throw Error(ErrorKind::ShapeMismatch, "theta_u needs one table per lag component");
  if (base.size() != q) throw Error(ErrorKind::ShapeMismatch, "base row must have q entries");
  const auto rows = checked_power(q, lag_order);
  const auto ref = reference_block();
  for (std::size_t g = 0; g < G; ++g) {
    if (tables[g].rows() != rows || tables[g].cols() != q)
      throw Error(ErrorKind::ShapeMismatch, "theta_u table must be q^l x q");
    tables[g].validate(kProbTolerance, "theta_u table " + std::to_string(g + 1));
    const auto row = tables[g].row(ref);
    if (!std::equal(row.begin(), row.end(), base.begin()))
      throw Error(ErrorKind::InvalidModel, "theta_u table " + std::to_string(g + 1) + " differs from the base row at u...u");
  }
}

ThetaU to_theta_u(const MtdModel& model, Symbol reference) {
  const auto q = static_cast<std::uint64_t>(model.q());
  if (reference >= q) throw Error(ErrorKind::InvalidSymbol, "reference letter out of range");
  const int m = model.order();
  const int l = model.lag_order();
  const std::uint64_t all_u = repeated(reference, m, q);
  const std::uint64_t u_block = repeated(reference, l, q);

  std::vector<double> base(q);
  for (Symbol j = 0; j < q; ++j) base[j] = transition_prob(model, all_u, j);

  std::vector<StochasticMatrix> tables;
  std::uint64_t stride = 1;
  for (std::size_t g = 0; g < model.components(); ++g, stride *= q) {
    StochasticMatrix table(model.block_count(), q);
    for (std::uint64_t b = 0; b < model.block_count(); ++b) {
      if (b == u_block) {
        std::copy(base.begin(), base.end(), table.row(b).begin());
        continue;
      }
      const std::uint64_t history = all_u - u_block * stride + b * stride;
      for (Symbol j = 0; j < q; ++j) table(b, j) = transition_prob(model, history, j);
    }
    tables.push_back(std::move(table));
  }
  return ThetaU(model.alphabet(), m, l, reference, std::move(tables), std::move(base));
}

// The next-letter law is a sum of functions of overlapping l-letter windows.
// For such a chain of windows, the value at any history equals the sum of the
// values at histories keeping a single window (u elsewhere) minus the sum at
// histories keeping the overlap of consecutive windows. For l = 1 the
// overlaps are empty and this is sum_g p_u(g; i_g, j) - (m - 1) p_u(j).
FullMarkovModel from_theta_u(const ThetaU& theta) {
  theta.validate();
  const auto q = static_cast<std::uint64_t>(theta.alphabet.size());
  const std::uint64_t histories = checked_power(q, theta.order, kMaxTableEntries / q);
  const std::uint64_t blocks = checked_power(q, theta.lag_order);
  const std::size_t G = theta.tables.size();
  constexpr double kBand = 1e-9;

  StochasticMatrix table(histories, q);
  for (std::uint64_t h = 0; h < histories; ++h) {
    for (Symbol j = 0; j < q; ++j) {
      double p = 0.0;
      std::uint64_t stride = 1;
      for (std::size_t g = 0; g < G; ++g, stride *= q) {
        const std::uint64_t block = (h / stride) % blocks;
        p += theta.tables[g](block, j);
        if (g + 1 < G) p -= theta.tables[g](block - block % q + theta.reference, j);
      }
      if (p < -kBand || p > 1.0 + kBand)
        throw Error(ErrorKind::NotAnMtdPoint, "reconstructed P(" + theta.alphabet.spell(h, theta.order) + "; " +
                                                  theta.alphabet.label(j) + ") = " + std::to_string(p));
      table(h, j) = std::clamp(p, 0.0, 1.0);
    }
  }
  return FullMarkovModel(theta.alphabet, theta.order, std::move(table));
}

std::uint64_t dim_full_markov(int order, std::size_t q) { return checked_power(q, order) * (q - 1); }

std::uint64_t dim_raw_mtd(int order, int lag_order, std::size_t q) {
  if (lag_order < 1 || lag_order > order) throw Error(ErrorKind::LagOutOfRange, "lag order must lie in [1, m]");
  const auto G = static_cast<std::uint64_t>(order - lag_order + 1);
  return (G - 1) + G * checked_power(q, lag_order) * (q - 1);
}

std::uint64_t dim_theta_u(int order, int lag_order, std::size_t q) {
  if (lag_order < 1 || lag_order > order) throw Error(ErrorKind::LagOutOfRange, "lag order must lie in [1, m]");
  const std::uint64_t q1 = q - 1;
  std::uint64_t dim = (1 + static_cast<std::uint64_t>(order) * q1) * q1;
  for (int k = 2; k <= lag_order; ++k)
    dim += checked_power(q, k - 2) * q1 * q1 * q1 * static_cast<std::uint64_t>(order - k + 1);
  return dim;
}

std::uint64_t model_dimension(const MtdModel& model, DimensionConvention convention) {
  const std::size_t q = model.q();
  if (model.variant() == Variant::SingleMatrix)
    return static_cast<std::uint64_t>(model.order() - 1) + q * (q - 1);
  return convention == DimensionConvention::ThetaU ? dim_theta_u(model.order(), model.lag_order(), q)
                                                   : dim_raw_mtd(model.order(), model.lag_order(), q);
}

double bic(double loglik, std::uint64_t dim, std::uint64_t n_terms) {
  if (n_terms < 1) throw Error(ErrorKind::EmptyCorpus, "BIC needs at least one likelihood term");
  if (std::isinf(loglik) && loglik < 0) return std::numeric_limits<double>::infinity();
  return -2.0 * loglik + static_cast<double>(dim) * std::log(static_cast<double>(n_terms));
}

}  // namespace mtd
