#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <vector>

#include "mtd/alphabet.hpp"

namespace mtd {

// Occurrence counts of (m+1)-letter words, keyed by word index. Zero counts
// are never stored; iteration is in ascending word index.
class NGramCounts {
 public:
  NGramCounts(Alphabet alphabet, int word_length);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  int word_length() const noexcept { return word_length_; }
  int order() const noexcept { return word_length_ - 1; }
  std::uint64_t total() const noexcept { return total_; }
  bool empty() const noexcept { return counts_.empty(); }
  std::size_t distinct() const noexcept { return counts_.size(); }

  const std::map<WordIndex, std::uint64_t>& entries() const noexcept { return counts_; }
  std::uint64_t count(WordIndex word) const noexcept;

  void add(WordIndex word, std::uint64_t n = 1);

  bool operator==(const NGramCounts&) const = default;

 private:
  Alphabet alphabet_;
  int word_length_;
  std::uint64_t word_space_;
  std::map<WordIndex, std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

// Lag-g block (length l) versus present letter, weighted by word counts.
struct ContingencyTable {
  int lag;
  int block_length;
  std::size_t q;
  std::vector<std::uint64_t> cells;  // q^l x q, row-major

  std::uint64_t operator()(std::uint64_t block, Symbol next) const { return cells[block * q + next]; }
  std::uint64_t total() const noexcept;
};

// Windows never cross sequence boundaries.
NGramCounts count_ngrams(std::span<const Sequence> sequences, int order);
NGramCounts merge_counts(const NGramCounts& a, const NGramCounts& b);
ContingencyTable lag_contingency(const NGramCounts& counts, int lag, int block_length);

// "word<TAB>count" lines, words spelled oldest letter first.
void write_counts(std::ostream& out, const NGramCounts& counts);
NGramCounts read_counts(std::istream& in, const Alphabet& alphabet);

}  // namespace mtd
