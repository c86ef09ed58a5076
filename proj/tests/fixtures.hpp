#pragma once

// Published parameter sets and the tables printed next to them.

#include <vector>

#include "mtd/model.hpp"

namespace fixtures {

using Rows = std::vector<std::vector<double>>;

inline mtd::MtdModel mtd1(const char* letters, std::vector<double> phi, const Rows& pi1, const Rows& pi2) {
  return mtd::MtdModel(mtd::Alphabet::from_letters(letters), 2, 1, mtd::Variant::General, std::move(phi),
                       {mtd::StochasticMatrix::from_rows(pi1), mtd::StochasticMatrix::from_rows(pi2)});
}

// Two distinct (phi, pi) points of the same order-2 DNA chain.
inline mtd::MtdModel theta_a() {
  return mtd1("acgt", {0.3, 0.7},
              {{0.1, 0.2, 0.3, 0.4}, {0.4, 0.3, 0.2, 0.1}, {0.2, 0.2, 0.2, 0.4}, {0.4, 0.2, 0.2, 0.2}},
              {{0.1, 0.1, 0.1, 0.7}, {0.2, 0.2, 0.4, 0.2}, {0.3, 0.3, 0.3, 0.1}, {0.3, 0.2, 0.3, 0.2}});
}

inline mtd::MtdModel theta_a_prime() {
  return mtd1("acgt", {0.2, 0.8},
              {{0.2, 0.1, 0.2, 0.5}, {0.65, 0.25, 0.05, 0.05}, {0.35, 0.1, 0.05, 0.5}, {0.65, 0.1, 0.05, 0.2}},
              {{0.075, 0.1375, 0.15, 0.6375},
               {0.1625, 0.225, 0.4125, 0.2},
               {0.25, 0.3125, 0.325, 0.1125},
               {0.25, 0.225, 0.325, 0.2}});
}

// Two-decimal table; rows aa, ac, ..., tt.
inline const Rows& printed_pi_a() {
  static const Rows rows{
      {0.1, 0.13, 0.16, 0.61},  {0.19, 0.16, 0.13, 0.52}, {0.13, 0.13, 0.13, 0.61}, {0.19, 0.13, 0.13, 0.55},
      {0.17, 0.2, 0.37, 0.26},  {0.26, 0.23, 0.34, 0.17}, {0.2, 0.2, 0.34, 0.26},   {0.26, 0.2, 0.34, 0.2},
      {0.24, 0.27, 0.3, 0.19},  {0.33, 0.3, 0.27, 0.1},   {0.27, 0.27, 0.27, 0.19}, {0.33, 0.27, 0.27, 0.13},
      {0.24, 0.2, 0.3, 0.26},   {0.33, 0.23, 0.27, 0.17}, {0.27, 0.2, 0.27, 0.26},  {0.33, 0.2, 0.27, 0.2}};
  return rows;
}

// Wood pewee song, songs labelled 1..3.
inline mtd::MtdModel pewee_em() {
  return mtd1("123", {0.275, 0.725}, {{0.102, 0.729, 0.169}, {0.969, 0.0, 0.031}, {0.987, 0.013, 0.0}},
              {{1.0, 0.0, 0.0}, {0.151, 0.015, 0.834}, {0.0, 1.0, 0.0}});
}

inline mtd::MtdModel pewee_berchtold() {
  return mtd1("123", {0.269, 0.731}, {{0.097, 0.739, 0.164}, {0.980, 0.0, 0.020}, {0.987, 0.013, 0.0}},
              {{0.996, 0.0, 0.004}, {0.152, 0.020, 0.828}, {0.003, 0.997, 0.0}});
}

inline const Rows& printed_pi_pewee_em() {
  static const Rows rows{{0.75305, 0.200475, 0.046475},  {0.991475, 0.0, 0.008525}, {0.996425, 0.003575, 0.0},
                         {0.137525, 0.21135, 0.651125},  {0.37595, 0.010875, 0.613175}, {0.3809, 0.01445, 0.60465},
                         {0.02805, 0.925475, 0.046475},  {0.266475, 0.725, 0.008525}, {0.271425, 0.728575, 0.0}};
  return rows;
}

inline const Rows& printed_pi_pewee_berchtold() {
  static const Rows rows{{0.754169, 0.198791, 0.047040}, {0.991696, 0.0, 0.008304},   {0.993579, 0.003497, 0.02924},
                         {0.137205, 0.213411, 0.649384}, {0.374732, 0.01462, 0.610648}, {0.376615, 0.018117, 0.605268},
                         {0.028286, 0.927598, 0.044116}, {0.265813, 0.728807, 0.00538}, {0.267696, 0.732304, 0.0}};
  return rows;
}

// Reference-letter tables for u = 1: rows i, columns j of p(g; i, j).
struct ThetaFigure {
  Rows lag1;
  Rows lag2;
};

inline const ThetaFigure& figure_theta_berchtold() {
  static const ThetaFigure f{{{0.754169, 0.198791, 0.073356}, {0.991696, 0.0, 0.03462}, {0.993579, 0.003497, 0.02924}},
                             {{0.754169, 0.198791, 0.073356},
                              {0.137205, 0.213411, 0.649384},
                              {0.048023, 0.927598, 0.044116}}};
  return f;
}

inline const ThetaFigure& figure_theta_em() {
  static const ThetaFigure f{{{0.75305, 0.200475, 0.046475}, {0.991475, 0.0, 0.008525}, {0.996425, 0.003575, 0.0}},
                             {{0.75305, 0.200475, 0.046475},
                              {0.137525, 0.21135, 0.651125},
                              {0.02805, 0.925475, 0.046475}}};
  return f;
}

// Mouse alphaA-crystallin gene.
inline mtd::MtdModel crystallin_em() {
  return mtd1("acgt", {0.562, 0.438},
              {{0.225, 0.140, 0.506, 0.129},
               {0.354, 0.300, 0.008, 0.338},
               {0.271, 0.123, 0.456, 0.150},
               {0.166, 0.191, 0.430, 0.213}},
              {{0.094, 0.600, 0.149, 0.157},
               {0.335, 0.271, 0.153, 0.241},
               {0.185, 0.415, 0.099, 0.301},
               {0.192, 0.370, 0.129, 0.309}});
}

inline const Rows& printed_pi_crystallin_em() {
  static const Rows rows{{0.167622, 0.341480, 0.349634, 0.141264}, {0.240120, 0.431400, 0.069758, 0.258722},
                         {0.193474, 0.331926, 0.321534, 0.153066}, {0.134464, 0.370142, 0.306922, 0.188472},
                         {0.273180, 0.197378, 0.351386, 0.178056}, {0.345678, 0.287298, 0.071510, 0.295514},
                         {0.299032, 0.187824, 0.323286, 0.189858}, {0.240022, 0.226040, 0.308674, 0.225264},
                         {0.207480, 0.260450, 0.327734, 0.204336}, {0.279978, 0.350370, 0.047858, 0.321794},
                         {0.233332, 0.250896, 0.299634, 0.216138}, {0.174322, 0.289112, 0.285022, 0.251544},
                         {0.210546, 0.240740, 0.340874, 0.207840}, {0.283044, 0.330660, 0.060998, 0.325298},
                         {0.236398, 0.231186, 0.312774, 0.219642}, {0.177388, 0.269402, 0.298162, 0.255048}};
  return rows;
}

// Free-parameter counts for q = 4: order, full, MTD1 raw, MTD1 theta_u,
// MTD2 raw, MTD2 theta_u (0 where the cell is empty).
struct DimensionRow {
  int m;
  std::uint64_t full, raw1, theta1, raw2, theta2;
};

inline const std::vector<DimensionRow>& dimension_table() {
  static const std::vector<DimensionRow> rows{{1, 12, 12, 12, 0, 0},
                                              {2, 48, 25, 21, 48, 48},
                                              {3, 192, 38, 30, 97, 84},
                                              {4, 768, 51, 39, 146, 120},
                                              {5, 3072, 64, 48, 195, 156}};
  return rows;
}

}  // namespace fixtures
