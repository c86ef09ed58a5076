#include "mtd/counts.hpp"

#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include "mtd/errors.hpp"

namespace mtd {

NGramCounts::NGramCounts(Alphabet alphabet, int word_length)
    : alphabet_(std::move(alphabet)), word_length_(word_length) {
  if (word_length_ < 1) throw Error(ErrorKind::ShapeMismatch, "word length must be positive");
  word_space_ = checked_power(alphabet_.size(), word_length_);
}

std::uint64_t NGramCounts::count(WordIndex word) const noexcept {
  const auto it = counts_.find(word);
  return it == counts_.end() ? 0 : it->second;
}

void NGramCounts::add(WordIndex word, std::uint64_t n) {
  if (word >= word_space_) throw Error(ErrorKind::InvalidSymbol, "word index out of range");
  if (n == 0) return;
  counts_[word] += n;
  total_ += n;
}

std::uint64_t ContingencyTable::total() const noexcept {
  std::uint64_t sum = 0;
  for (auto c : cells) sum += c;
  return sum;
}

NGramCounts count_ngrams(std::span<const Sequence> sequences, int order) {
  if (sequences.empty()) throw Error(ErrorKind::EmptyCorpus, "no sequences to count");
  if (order < 0) throw Error(ErrorKind::ShapeMismatch, "order must be nonnegative");
  const Alphabet& alphabet = sequences.front().alphabet;
  NGramCounts counts(alphabet, order + 1);
  const auto q = static_cast<WordIndex>(alphabet.size());
  const WordIndex span = checked_power(q, order + 1);
  for (const auto& seq : sequences) {
    if (!(seq.alphabet == alphabet)) throw Error(ErrorKind::AlphabetMismatch, "sequences use different alphabets");
    WordIndex word = 0;
    for (std::size_t t = 0; t < seq.size(); ++t) {
      word = (word * q + seq.data[t]) % span;
      if (t >= static_cast<std::size_t>(order)) counts.add(word);
    }
  }
  return counts;
}

NGramCounts merge_counts(const NGramCounts& a, const NGramCounts& b) {
  if (!(a.alphabet() == b.alphabet()) || a.word_length() != b.word_length())
    throw Error(ErrorKind::AlphabetMismatch, "cannot merge counts over different alphabets or word lengths");
  NGramCounts out = a;
  for (const auto& [word, n] : b.entries()) out.add(word, n);
  return out;
}

ContingencyTable lag_contingency(const NGramCounts& counts, int lag, int block_length) {
  const int m = counts.order();
  if (block_length < 1 || lag < 1 || lag > m - block_length + 1)
    throw Error(ErrorKind::LagOutOfRange, "lag " + std::to_string(lag) + " outside [1, " +
                                              std::to_string(m - block_length + 1) + "]");
  const auto q = static_cast<std::uint64_t>(counts.alphabet().size());
  const std::uint64_t blocks = checked_power(q, block_length);
  std::uint64_t stride = 1;
  for (int i = 1; i < lag; ++i) stride *= q;
  ContingencyTable table{lag, block_length, counts.alphabet().size(), std::vector<std::uint64_t>(blocks * q, 0)};
  for (const auto& [word, n] : counts.entries()) {
    const auto next = word % q;
    const auto block = (word / q / stride) % blocks;
    table.cells[block * q + next] += n;
  }
  return table;
}

void write_counts(std::ostream& out, const NGramCounts& counts) {
  out << "word\tcount\n";
  for (const auto& [word, n] : counts.entries())
    out << counts.alphabet().spell(word, counts.word_length()) << '\t' << n << '\n';
}

NGramCounts read_counts(std::istream& in, const Alphabet& alphabet) {
  std::string line;
  std::optional<NGramCounts> counts;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || (line_no == 1 && line == "word\tcount")) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw Error(ErrorKind::FormatError, "counts line " + std::to_string(line_no) + " lacks a tab");
    const std::string word = line.substr(0, tab);
    std::uint64_t n = 0;
    std::istringstream(line.substr(tab + 1)) >> n;
    if (!counts) counts.emplace(alphabet, static_cast<int>(word.size()));
    if (static_cast<int>(word.size()) != counts->word_length())
      throw Error(ErrorKind::FormatError, "counts line " + std::to_string(line_no) + " has a different word length");
    counts->add(alphabet.parse_word(word), n);
  }
  if (!counts) throw Error(ErrorKind::EmptyCorpus, "counts file has no entries");
  return std::move(*counts);
}

}  // namespace mtd
