#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "mtd/alphabet.hpp"

namespace mtd {

inline constexpr double kProbTolerance = 1e-12;

// Dense row-major rows x cols matrix of probabilities.
class StochasticMatrix {
 public:
  StochasticMatrix() = default;
  StochasticMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  StochasticMatrix(std::size_t rows, std::size_t cols, std::vector<double> values);
  static StochasticMatrix from_rows(const std::vector<std::vector<double>>& rows);
  static StochasticMatrix uniform(std::size_t rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double operator()(std::size_t r, std::size_t c) const noexcept { return values_[r * cols_ + c]; }
  double& operator()(std::size_t r, std::size_t c) noexcept { return values_[r * cols_ + c]; }

  std::span<const double> row(std::size_t r) const noexcept { return {values_.data() + r * cols_, cols_}; }
  std::span<double> row(std::size_t r) noexcept { return {values_.data() + r * cols_, cols_}; }
  const std::vector<double>& values() const noexcept { return values_; }

  // Throws InvalidModel when an entry leaves [0,1] or a row sum misses 1.
  void validate(double tol = kProbTolerance, std::string_view what = "matrix") const;
  bool is_stochastic(double tol = kProbTolerance) const noexcept;

  bool operator==(const StochasticMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

enum class Variant { General, SingleMatrix };

std::string_view to_string(Variant v);
Variant parse_variant(std::string_view text);

// Mixture of G = m - l + 1 lag components. Component g (1-based) predicts the
// next letter from the l-letter block at lags g..g+l-1 through matrix(g).
//
// Index conventions: a history (i_m, ..., i_1) with i_1 the most recent letter
// has index sum_g i_g * q^(g-1). The block seen by component g is
// (history / q^(g-1)) mod q^l, i.e. its most recent letter is least
// significant. An (m+1)-word (i_m, ..., i_1, i_0) has index
// history * q + i_0.
class MtdModel {
 public:
  MtdModel(Alphabet alphabet, int order, int lag_order, Variant variant, std::vector<double> phi,
           std::vector<StochasticMatrix> matrices);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t q() const noexcept { return alphabet_.size(); }
  int order() const noexcept { return order_; }
  int lag_order() const noexcept { return lag_order_; }
  Variant variant() const noexcept { return variant_; }
  std::size_t components() const noexcept { return phi_.size(); }

  const std::vector<double>& phi() const noexcept { return phi_; }
  // Component g is 0-based here. Single-matrix models share matrix 0.
  const StochasticMatrix& matrix(std::size_t g) const noexcept {
    return matrices_[variant_ == Variant::SingleMatrix ? 0 : g];
  }
  const std::vector<StochasticMatrix>& matrices() const noexcept { return matrices_; }

  std::uint64_t history_count() const noexcept { return history_count_; }
  std::uint64_t block_count() const noexcept { return block_count_; }

  // Block of the 0-based component g inside history index h.
  std::uint64_t block(std::uint64_t history, std::size_t g) const noexcept {
    return (history / lag_stride_[g]) % block_count_;
  }

  bool operator==(const MtdModel&) const = default;

 private:
  Alphabet alphabet_;
  int order_;
  int lag_order_;
  Variant variant_;
  std::vector<double> phi_;
  std::vector<StochasticMatrix> matrices_;
  std::uint64_t history_count_ = 0;
  std::uint64_t block_count_ = 0;
  std::vector<std::uint64_t> lag_stride_;
};

// Unconstrained order-m chain: q^m x q table in history-index row order.
struct FullMarkovModel {
  Alphabet alphabet;
  int order;
  StochasticMatrix table;

  FullMarkovModel(Alphabet a, int m, StochasticMatrix t);

  std::size_t q() const noexcept { return alphabet.size(); }
  bool operator==(const FullMarkovModel&) const = default;
};

// History index of m symbols given oldest first (y_{t-m}, ..., y_{t-1}).
std::uint64_t history_index(std::span<const Symbol> history, std::size_t q);

}  // namespace mtd
