#include "mtd/alphabet.hpp"

#include <algorithm>
#include <cctype>

#include "mtd/errors.hpp"

namespace mtd {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidSymbol: return "InvalidSymbol";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::InvalidModel: return "InvalidModel";
    case ErrorKind::ModelTooLarge: return "ModelTooLarge";
    case ErrorKind::AlphabetMismatch: return "AlphabetMismatch";
    case ErrorKind::LagOutOfRange: return "LagOutOfRange";
    case ErrorKind::EmptyCorpus: return "EmptyCorpus";
    case ErrorKind::DegenerateLikelihood: return "DegenerateLikelihood";
    case ErrorKind::AllRestartsFailed: return "AllRestartsFailed";
    case ErrorKind::NotAnMtdPoint: return "NotAnMtdPoint";
    case ErrorKind::NonConvergentStationary: return "NonConvergentStationary";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::FormatError: return "FormatError";
  }
  return "Unknown";
}

Alphabet::Alphabet(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.size() < 2) throw Error(ErrorKind::InvalidSymbol, "alphabet needs at least two symbols");
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i].size() != 1) throw Error(ErrorKind::InvalidSymbol, "labels must be single characters: '" + labels_[i] + "'");
    const char c = labels_[i][0];
    if (std::isspace(static_cast<unsigned char>(c)) || c == '>')
      throw Error(ErrorKind::InvalidSymbol, "label may not be whitespace or '>'");
    for (std::size_t j = 0; j < i; ++j)
      if (labels_[j] == labels_[i]) throw Error(ErrorKind::InvalidSymbol, "duplicate label '" + labels_[i] + "'");
  }
}

Alphabet Alphabet::from_letters(std::string_view letters) {
  if (letters == "dna" || letters == "DNA") letters = "acgt";
  std::vector<std::string> labels;
  for (char c : letters) labels.emplace_back(1, c);
  return Alphabet(std::move(labels));
}

const std::string& Alphabet::label(Symbol s) const {
  if (s >= labels_.size()) throw Error(ErrorKind::InvalidSymbol, "symbol index " + std::to_string(s) + " out of range");
  return labels_[s];
}

std::optional<Symbol> Alphabet::find(char c) const noexcept {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i][0] == c) return static_cast<Symbol>(i);
  const auto uc = static_cast<unsigned char>(c);
  const char flipped = std::islower(uc) ? static_cast<char>(std::toupper(uc)) : static_cast<char>(std::tolower(uc));
  if (flipped == c) return std::nullopt;
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i][0] == flipped) return static_cast<Symbol>(i);
  return std::nullopt;
}

Symbol Alphabet::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return static_cast<Symbol>(i);
  throw Error(ErrorKind::InvalidSymbol, "'" + std::string(label) + "' is not in alphabet '" + letters() + "'");
}

std::string Alphabet::letters() const {
  std::string out;
  for (const auto& l : labels_) out += l;
  return out;
}

std::string Alphabet::spell(WordIndex word, int k) const {
  std::string out(static_cast<std::size_t>(k), '?');
  const auto q = static_cast<WordIndex>(size());
  for (int pos = k - 1; pos >= 0; --pos) {
    out[static_cast<std::size_t>(pos)] = labels_[word % q][0];
    word /= q;
  }
  return out;
}

WordIndex Alphabet::parse_word(std::string_view word) const {
  WordIndex index = 0;
  for (char c : word) {
    const auto s = find(c);
    if (!s) throw Error(ErrorKind::InvalidSymbol, std::string("'") + c + "' is not in alphabet '" + letters() + "'");
    index = index * size() + *s;
  }
  return index;
}

Sequence::Sequence(Alphabet a, std::vector<Symbol> d, std::string n)
    : alphabet(std::move(a)), data(std::move(d)), name(std::move(n)) {
  for (Symbol s : data)
    if (s >= alphabet.size()) throw Error(ErrorKind::InvalidSymbol, "sequence symbol " + std::to_string(s) + " out of range");
}

Sequence Sequence::from_string(const Alphabet& a, std::string_view text, std::string name) {
  std::vector<Symbol> data;
  data.reserve(text.size());
  for (char c : text) {
    const auto s = a.find(c);
    if (!s) throw Error(ErrorKind::InvalidSymbol, std::string("'") + c + "' is not in alphabet '" + a.letters() + "'");
    data.push_back(*s);
  }
  return Sequence(a, std::move(data), std::move(name));
}

std::string Sequence::to_string() const {
  std::string out;
  out.reserve(data.size());
  for (Symbol s : data) out += alphabet.letter(s);
  return out;
}

std::uint64_t checked_power(std::uint64_t q, int k, std::uint64_t limit) {
  std::uint64_t result = 1;
  for (int i = 0; i < k; ++i) {
    if (result > limit / q) throw Error(ErrorKind::ModelTooLarge, "q^k exceeds " + std::to_string(limit));
    result *= q;
  }
  return result;
}

}  // namespace mtd
