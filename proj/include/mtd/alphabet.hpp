#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mtd {

using Symbol = std::uint32_t;
using WordIndex = std::uint64_t;

// Ordered set of single-character labels. A symbol's index is its position.
class Alphabet {
 public:
  explicit Alphabet(std::vector<std::string> labels);

  // "acgt" -> {"a","c","g","t"}; the preset name "dna" is accepted as well.
  static Alphabet from_letters(std::string_view letters);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(Symbol s) const;
  char letter(Symbol s) const { return label(s)[0]; }

  // Exact match first, then the opposite letter case.
  std::optional<Symbol> find(char c) const noexcept;
  Symbol index_of(std::string_view label) const;

  std::string letters() const;

  // Spells an index of a k-letter word, oldest letter first.
  std::string spell(WordIndex word, int k) const;
  // Inverse of spell().
  WordIndex parse_word(std::string_view word) const;

  bool operator==(const Alphabet& other) const noexcept { return labels_ == other.labels_; }

 private:
  std::vector<std::string> labels_;
};

// Observed symbols over an alphabet; every entry is an index in [0, q).
struct Sequence {
  Alphabet alphabet;
  std::vector<Symbol> data;
  std::string name;

  Sequence(Alphabet a, std::vector<Symbol> d, std::string n = {});

  static Sequence from_string(const Alphabet& a, std::string_view text, std::string name = {});

  std::size_t size() const noexcept { return data.size(); }
  std::string to_string() const;
};

// q^k with an overflow guard against `limit`.
std::uint64_t checked_power(std::uint64_t q, int k, std::uint64_t limit = UINT64_MAX);

}  // namespace mtd
