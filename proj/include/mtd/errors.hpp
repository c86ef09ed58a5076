#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mtd {

enum class ErrorKind {
  InvalidSymbol,
  ShapeMismatch,
  InvalidModel,
  ModelTooLarge,
  AlphabetMismatch,
  LagOutOfRange,
  EmptyCorpus,
  DegenerateLikelihood,
  AllRestartsFailed,
  NotAnMtdPoint,
  NonConvergentStationary,
  IoError,
  FormatError,
};

std::string_view to_string(ErrorKind kind);

// All library failures are reported through this type; kind() tells callers
// (and the CLI exit-code mapping) which contract was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Raised when a mixture probability vanishes at an observed word. Carries the
// offending word (spelled in alphabet labels) and the log-likelihood trace
// accumulated before the failure.
class DegenerateLikelihoodError : public Error {
 public:
  DegenerateLikelihoodError(std::string word, std::vector<double> partial_trace)
      : Error(ErrorKind::DegenerateLikelihood, "zero mixture probability at observed word '" + word + "'"),
        word_(std::move(word)),
        partial_trace_(std::move(partial_trace)) {}

  const std::string& word() const noexcept { return word_; }
  const std::vector<double>& partial_trace() const noexcept { return partial_trace_; }
  void set_partial_trace(std::vector<double> trace) { partial_trace_ = std::move(trace); }

 private:
  std::string word_;
  std::vector<double> partial_trace_;
};

}  // namespace mtd
