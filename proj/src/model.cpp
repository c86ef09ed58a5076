#include "mtd/model.hpp"

#include <cmath>
#include <numeric>

#include "mtd/errors.hpp"

namespace mtd {

StochasticMatrix::StochasticMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), values_(rows * cols, fill) {}

StochasticMatrix::StochasticMatrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (values_.size() != rows * cols)
    throw Error(ErrorKind::ShapeMismatch, "matrix expects " + std::to_string(rows * cols) + " entries, got " +
                                              std::to_string(values_.size()));
}

StochasticMatrix StochasticMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  std::vector<double> values;
  values.reserve(rows.size() * cols);
  for (const auto& r : rows) {
    if (r.size() != cols) throw Error(ErrorKind::ShapeMismatch, "ragged matrix rows");
    values.insert(values.end(), r.begin(), r.end());
  }
  return StochasticMatrix(rows.size(), cols, std::move(values));
}

StochasticMatrix StochasticMatrix::uniform(std::size_t rows, std::size_t cols) {
  return StochasticMatrix(rows, cols, 1.0 / static_cast<double>(cols));
}

bool StochasticMatrix::is_stochastic(double tol) const noexcept {
  for (std::size_t r = 0; r < rows_; ++r) {
    double sum = 0.0;
    for (double v : row(r)) {
      if (!(v >= -tol && v <= 1.0 + tol)) return false;
      sum += v;
    }
    if (std::abs(sum - 1.0) > tol) return false;
  }
  return true;
}

void StochasticMatrix::validate(double tol, std::string_view what) const {
  for (std::size_t r = 0; r < rows_; ++r) {
    double sum = 0.0;
    for (double v : row(r)) {
      if (!(v >= 0.0 && v <= 1.0))
        throw Error(ErrorKind::InvalidModel, std::string(what) + " row " + std::to_string(r) + " has entry outside [0,1]");
      sum += v;
    }
    if (std::abs(sum - 1.0) > tol)
      throw Error(ErrorKind::InvalidModel, std::string(what) + " row " + std::to_string(r) + " sums to " +
                                               std::to_string(sum));
  }
}

std::string_view to_string(Variant v) { return v == Variant::General ? "general" : "single_matrix"; }

Variant parse_variant(std::string_view text) {
  if (text == "general") return Variant::General;
  if (text == "single_matrix" || text == "single") return Variant::SingleMatrix;
  throw Error(ErrorKind::FormatError, "unknown variant '" + std::string(text) + "'");
}

MtdModel::MtdModel(Alphabet alphabet, int order, int lag_order, Variant variant, std::vector<double> phi,
                   std::vector<StochasticMatrix> matrices)
    : alphabet_(std::move(alphabet)),
      order_(order),
      lag_order_(lag_order),
      variant_(variant),
      phi_(std::move(phi)),
      matrices_(std::move(matrices)) {
  if (order_ < 1) throw Error(ErrorKind::InvalidModel, "order must be positive");
  if (lag_order_ < 1 || lag_order_ > order_) throw Error(ErrorKind::InvalidModel, "lag order must lie in [1, m]");
  if (variant_ == Variant::SingleMatrix && lag_order_ != 1)
    throw Error(ErrorKind::InvalidModel, "single-matrix models require lag order 1");

  const auto q = static_cast<std::uint64_t>(alphabet_.size());
  history_count_ = checked_power(q, order_);
  block_count_ = checked_power(q, lag_order_);
  const std::size_t G = static_cast<std::size_t>(order_ - lag_order_ + 1);

  if (phi_.size() != G)
    throw Error(ErrorKind::ShapeMismatch, "phi has " + std::to_string(phi_.size()) + " entries, expected " + std::to_string(G));
  const std::size_t expected_matrices = variant_ == Variant::SingleMatrix ? 1 : G;
  if (matrices_.size() != expected_matrices)
    throw Error(ErrorKind::ShapeMismatch, "expected " + std::to_string(expected_matrices) + " matrices, got " +
                                              std::to_string(matrices_.size()));

  double sum = 0.0;
  for (double p : phi_) {
    if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::InvalidModel, "phi entry outside [0,1]");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kProbTolerance) throw Error(ErrorKind::InvalidModel, "phi sums to " + std::to_string(sum));

  for (std::size_t g = 0; g < matrices_.size(); ++g) {
    const auto& pi = matrices_[g];
    if (pi.rows() != block_count_ || pi.cols() != q)
      throw Error(ErrorKind::ShapeMismatch, "matrix " + std::to_string(g + 1) + " must be q^l x q");
    pi.validate(kProbTolerance, "matrix " + std::to_string(g + 1));
  }

  lag_stride_.resize(G);
  std::uint64_t stride = 1;
  for (std::size_t g = 0; g < G; ++g) {
    lag_stride_[g] = stride;
    stride *= q;
  }
}

FullMarkovModel::FullMarkovModel(Alphabet a, int m, StochasticMatrix t)
    : alphabet(std::move(a)), order(m), table(std::move(t)) {
  if (order < 0) throw Error(ErrorKind::InvalidModel, "order must be nonnegative");
  const auto rows = checked_power(alphabet.size(), order);
  if (table.rows() != rows || table.cols() != alphabet.size())
    throw Error(ErrorKind::ShapeMismatch, "full Markov table must be q^m x q");
  table.validate(kProbTolerance, "transition table");
}

std::uint64_t history_index(std::span<const Symbol> history, std::size_t q) {
  std::uint64_t index = 0;
  for (Symbol s : history) {
    if (s >= q) throw Error(ErrorKind::InvalidSymbol, "history symbol " + std::to_string(s) + " out of range");
    index = index * q + s;
  }
  return index;
}

}  // namespace mtd
