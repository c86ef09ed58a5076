#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "mtd/model.hpp"

namespace mtd {

// Seeded generator with a platform-independent uniform draw; the standard
// distributions are implementation-defined, so they are avoided here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on the open interval (0, 1).
  double uniform() noexcept { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }
  // Index drawn from a probability vector by inversion.
  std::size_t categorical(std::span<const double> probs) noexcept;

  std::uint64_t next() noexcept { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

// Independent stream for sub-task `index` of a run seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

struct SampleInit {
  // Empty prefix means uniform over Y^m.
  std::vector<Symbol> prefix;

  static SampleInit uniform() { return {}; }
  static SampleInit given(std::vector<Symbol> p) { return {std::move(p)}; }
};

Sequence sample_sequence(const MtdModel& model, std::size_t length, std::uint64_t seed,
                         const SampleInit& init = SampleInit::uniform());
Sequence sample_sequence(const FullMarkovModel& model, std::size_t length, std::uint64_t seed,
                         const SampleInit& init = SampleInit::uniform());

// phi and every row are normalized independent uniform(0,1) draws.
MtdModel random_mtd(const Alphabet& alphabet, int order, int lag_order, Variant variant, std::uint64_t seed);
FullMarkovModel random_full_markov(const Alphabet& alphabet, int order, std::uint64_t seed);

}  // namespace mtd
