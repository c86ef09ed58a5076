#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "mtd/model.hpp"

namespace mtd {

// Identifiable coordinates of an MTD distribution: transition probabilities
// from histories equal to u...u except for one l-letter block.
//
// tables[g][b][j] = P(u..u b u..u ; j) with block b at lag positions
// g+1..g+l (g 0-based). base[j] = P(u...u ; j) is the row every table holds
// at block u...u.
struct ThetaU {
  Alphabet alphabet;
  int order;
  int lag_order;
  Symbol reference;
  std::vector<StochasticMatrix> tables;
  std::vector<double> base;

  ThetaU(Alphabet a, int m, int l, Symbol u, std::vector<StochasticMatrix> t, std::vector<double> b);

  // Row sums and the shared base row; throws InvalidModel.
  void validate() const;
  std::uint64_t reference_block() const;

  bool operator==(const ThetaU&) const = default;
};

ThetaU to_theta_u(const MtdModel& model, Symbol reference);

// Rebuilds the full table. Throws NotAnMtdPoint when a reconstructed
// probability leaves [-1e-9, 1 + 1e-9].
FullMarkovModel from_theta_u(const ThetaU& theta);

std::uint64_t dim_full_markov(int order, std::size_t q);
std::uint64_t dim_raw_mtd(int order, int lag_order, std::size_t q);
std::uint64_t dim_theta_u(int order, int lag_order, std::size_t q);

enum class DimensionConvention { ThetaU, Raw };

// Single-matrix models are parametrized bijectively: (m-1) + q(q-1).
std::uint64_t model_dimension(const MtdModel& model, DimensionConvention convention);

// -2 loglik + dim ln(n_terms); +inf when loglik is -inf.
double bic(double loglik, std::uint64_t dim, std::uint64_t n_terms);

}  // namespace mtd
