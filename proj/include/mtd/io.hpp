#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mtd/model.hpp"
#include "mtd/theta_u.hpp"

namespace mtd {

enum class SequenceFormat { Plain, Fasta };

SequenceFormat parse_sequence_format(std::string_view text);

// Plain: one sequence per line. FASTA: records start at '>' lines. Letters
// match case-insensitively; whitespace is skipped; any other foreign
// character ends the current fragment, so a record may yield several
// Sequence values sharing its name.
std::vector<Sequence> read_sequences(std::istream& in, SequenceFormat format, const Alphabet& alphabet);
std::vector<Sequence> read_sequences(const std::filesystem::path& path, SequenceFormat format,
                                     const Alphabet& alphabet);

struct Provenance {
  std::string command;
  std::optional<std::uint64_t> seed;
  std::string corpus_digest;

  bool operator==(const Provenance&) const = default;
};

struct FitSummary {
  std::string method;
  double final_loglik = 0.0;
  int iterations = 0;
  bool converged = false;
  int restart_index = 0;
  std::uint64_t n_terms = 0;
  std::uint64_t dimension = 0;
  double bic = 0.0;

  bool operator==(const FitSummary&) const = default;
};

using AnyModel = std::variant<MtdModel, FullMarkovModel, ThetaU>;

struct ModelDocument {
  AnyModel model;
  Provenance provenance;
  std::optional<FitSummary> fit;
};

inline constexpr int kModelFormatVersion = 1;

std::string to_json(const ModelDocument& doc);
ModelDocument parse_model_document(std::string_view json_text);

void write_model_file(const std::filesystem::path& path, const ModelDocument& doc);
ModelDocument read_model_file(const std::filesystem::path& path);

// FNV-1a 64 over the bytes, as 16 hex digits.
std::string digest_hex(std::string_view bytes);
std::string file_digest(const std::filesystem::path& path);

// Shortest round-trip decimal text, independent of the locale.
std::string format_double(double value);

// "iter<TAB>loglik" with a header line.
void write_trace(std::ostream& out, std::span<const double> trace);

std::string read_file(const std::filesystem::path& path);

}  // namespace mtd
