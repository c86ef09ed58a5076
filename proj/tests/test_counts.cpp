#include <doctest.h>

#include <sstream>

#include "mtd/counts.hpp"
#include "mtd/errors.hpp"
#include "mtd/io.hpp"
#include "mtd/sampling.hpp"

using namespace mtd;

namespace {

std::vector<Sequence> random_corpus(const Alphabet& a, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Symbol> data(n);
  for (auto& s : data) s = static_cast<Symbol>(rng.next() % a.size());
  return {Sequence(a, std::move(data))};
}

}  // namespace

TEST_CASE("bigram counts of a short string") {
  const auto ab = Alphabet::from_letters("ab");
  const std::vector<Sequence> corpus{Sequence::from_string(ab, "aab")};
  const auto counts = count_ngrams(corpus, 1);
  CHECK(counts.total() == 2);
  CHECK(counts.distinct() == 2);
  CHECK(counts.count(ab.parse_word("aa")) == 1);
  CHECK(counts.count(ab.parse_word("ab")) == 1);
  CHECK(counts.count(ab.parse_word("ba")) == 0);
}

TEST_CASE("sequences no longer than m contribute nothing") {
  const auto ab = Alphabet::from_letters("ab");
  const std::vector<Sequence> corpus{Sequence::from_string(ab, "ab"), Sequence::from_string(ab, "")};
  const auto counts = count_ngrams(corpus, 2);
  CHECK(counts.empty());
  CHECK(counts.total() == 0);
}

TEST_CASE("counts match a brute-force window scan") {
  const auto dna = Alphabet::from_letters("acgt");
  const auto corpus = random_corpus(dna, 3000, 5);
  const auto counts = count_ngrams(corpus, 2);
  const auto& y = corpus[0].data;
  CHECK(counts.total() == y.size() - 2);

  std::map<WordIndex, std::uint64_t> scan;
  for (std::size_t t = 2; t < y.size(); ++t) ++scan[(y[t - 2] * 4 + y[t - 1]) * 4 + y[t]];
  CHECK(counts.entries() == scan);

  // prefix marginals equal bigram counts over positions 1..n-2
  for (WordIndex prefix = 0; prefix < 16; ++prefix) {
    std::uint64_t marginal = 0;
    for (Symbol j = 0; j < 4; ++j) marginal += counts.count(prefix * 4 + j);
    std::uint64_t bigrams = 0;
    for (std::size_t t = 1; t + 1 < y.size(); ++t) bigrams += (y[t - 1] * 4 + y[t]) == prefix;
    CHECK(marginal == bigrams);
  }
}

TEST_CASE("windows never cross sequence boundaries") {
  const auto ab = Alphabet::from_letters("ab");
  const std::vector<Sequence> corpus{Sequence::from_string(ab, "aaa"), Sequence::from_string(ab, "bbb")};
  const auto counts = count_ngrams(corpus, 1);
  CHECK(counts.total() == 4);
  CHECK(counts.count(ab.parse_word("ab")) == 0);
  CHECK(counts.count(ab.parse_word("aa")) == 2);
}

TEST_CASE("mixed alphabets are rejected") {
  const std::vector<Sequence> corpus{Sequence::from_string(Alphabet::from_letters("ab"), "ab"),
                                     Sequence::from_string(Alphabet::from_letters("abc"), "abc")};
  CHECK_THROWS_AS(count_ngrams(corpus, 1), Error);
}

TEST_CASE("merge is an associative, commutative sum") {
  const auto abc = Alphabet::from_letters("abc");
  const auto x = count_ngrams(random_corpus(abc, 500, 1), 2);
  const auto y = count_ngrams(random_corpus(abc, 400, 2), 2);
  const auto z = count_ngrams(random_corpus(abc, 300, 3), 2);
  const NGramCounts empty(abc, 3);
  CHECK(merge_counts(x, empty) == x);
  CHECK(merge_counts(x, y) == merge_counts(y, x));
  CHECK(merge_counts(merge_counts(x, y), z) == merge_counts(x, merge_counts(y, z)));
  CHECK_THROWS_AS(merge_counts(x, NGramCounts(abc, 2)), Error);
}

TEST_CASE("split corpora merge back to per-sequence counts") {
  const auto abc = Alphabet::from_letters("abc");
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto corpus = random_corpus(abc, 200, seed);
    for (std::uint64_t k = 1; k < 4; ++k) corpus.push_back(random_corpus(abc, 50 * k, seed + 1000 * k)[0]);
    const auto whole = count_ngrams(corpus, 2);
    Rng rng(seed);
    const std::size_t cut = 1 + rng.next() % (corpus.size() - 1);
    const std::span<const Sequence> all(corpus);
    CHECK(merge_counts(count_ngrams(all.first(cut), 2), count_ngrams(all.subspan(cut), 2)) == whole);
  }
}

TEST_CASE("lag contingency tables") {
  const auto ab = Alphabet::from_letters("ab");
  SUBCASE("m = 1 gives the bigram matrix") {
    const auto counts = count_ngrams(std::vector<Sequence>{Sequence::from_string(ab, "aababbba")}, 1);
    const auto table = lag_contingency(counts, 1, 1);
    for (WordIndex w = 0; w < 4; ++w) CHECK(table.cells[w] == counts.count(w));
  }
  SUBCASE("hand tally on aabab") {
    const auto counts = count_ngrams(std::vector<Sequence>{Sequence::from_string(ab, "aabab")}, 2);
    // (y_{t-2}, y_t) for t = 3..5: (a,b), (a,a), (b,b)
    const auto lag2 = lag_contingency(counts, 2, 1);
    CHECK(lag2(0, 0) == 1);
    CHECK(lag2(0, 1) == 1);
    CHECK(lag2(1, 0) == 0);
    CHECK(lag2(1, 1) == 1);
    CHECK(lag2.total() == counts.total());
    // (y_{t-1}, y_t): (a,b), (b,a), (a,b)
    const auto lag1 = lag_contingency(counts, 1, 1);
    CHECK(lag1(0, 1) == 2);
    CHECK(lag1(1, 0) == 1);
    CHECK(lag1.total() == 3);
  }
  SUBCASE("blocks of length two") {
    const auto abc = Alphabet::from_letters("abc");
    const auto corpus = random_corpus(abc, 800, 4);
    const auto counts = count_ngrams(corpus, 3);
    const auto& y = corpus[0].data;
    for (int g = 1; g <= 2; ++g) {
      const auto table = lag_contingency(counts, g, 2);
      std::vector<std::uint64_t> tally(27, 0);
      for (std::size_t t = 3; t < y.size(); ++t) {
        const auto block = y[t - g - 1] * 3 + y[t - g];
        ++tally[block * 3 + y[t]];
      }
      CHECK(table.cells == tally);
      CHECK(table.total() == counts.total());
    }
    CHECK_THROWS_AS(lag_contingency(counts, 3, 2), Error);
    CHECK_THROWS_AS(lag_contingency(counts, 0, 1), Error);
  }
}

TEST_CASE("lower-order counts by marginalization") {
  const auto dna = Alphabet::from_letters("acgt");
  const auto corpus = random_corpus(dna, 2000, 9);
  const auto c3 = count_ngrams(corpus, 3);
  const auto c1 = count_ngrams(corpus, 1);
  // drop the two oldest letters: every 4-word ends with a 2-word
  std::map<WordIndex, std::uint64_t> tail;
  for (const auto& [w, n] : c3.entries()) tail[w % 16] += n;
  // the 4-word windows miss the first two bigrams of the sequence
  const auto& y = corpus[0].data;
  for (std::size_t t = 1; t <= 2; ++t) tail[y[t - 1] * 4 + y[t]] += 1;
  CHECK(tail == c1.entries());
}

TEST_CASE("zero counts are never stored") {
  NGramCounts counts(Alphabet::from_letters("ab"), 2);
  counts.add(1, 0);
  CHECK(counts.empty());
  counts.add(1, 3);
  CHECK(counts.distinct() == 1);
  CHECK(counts.total() == 3);
}

TEST_CASE("counts text round trip") {
  const auto dna = Alphabet::from_letters("acgt");
  const auto counts = count_ngrams(random_corpus(dna, 500, 12), 2);
  std::stringstream ss;
  write_counts(ss, counts);
  CHECK(ss.str().rfind("word\tcount\n", 0) == 0);
  CHECK(read_counts(ss, dna) == counts);
}

TEST_CASE("foreign symbols break windows") {
  const auto dna = Alphabet::from_letters("acgt");
  std::istringstream in("acgNt\n");
  const auto corpus = read_sequences(in, SequenceFormat::Plain, dna);
  REQUIRE(corpus.size() == 2);
  const auto counts = count_ngrams(corpus, 1);
  CHECK(counts.total() == 2);
  CHECK(counts.count(dna.parse_word("ac")) == 1);
  CHECK(counts.count(dna.parse_word("cg")) == 1);
  CHECK(counts.count(dna.parse_word("gt")) == 0);
}
