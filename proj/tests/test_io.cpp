#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "mtd/errors.hpp"
#include "mtd/io.hpp"
#include "mtd/likelihood.hpp"
#include "mtd/sampling.hpp"
#include "mtd/theta_u.hpp"

using namespace mtd;

TEST_CASE("plain sequences") {
  const auto dna = Alphabet::from_letters("acgt");
  std::istringstream in("acgt\n\nGGa t\n");
  const auto seqs = read_sequences(in, SequenceFormat::Plain, dna);
  REQUIRE(seqs.size() == 2);
  CHECK(seqs[0].to_string() == "acgt");
  CHECK(seqs[1].to_string() == "gga" "t");
  CHECK(seqs[1].name == "line3");
}

TEST_CASE("fasta records") {
  const auto dna = Alphabet::from_letters("acgt");
  std::istringstream in(">first gene\nACGT\nacg\n;comment\n>second\r\ntttt\r\n");
  const auto seqs = read_sequences(in, SequenceFormat::Fasta, dna);
  REQUIRE(seqs.size() == 2);
  CHECK(seqs[0].name == "first gene");
  CHECK(seqs[0].to_string() == "acgtacg");
  CHECK(seqs[1].name == "second");
  CHECK(seqs[1].to_string() == "tttt");

  std::istringstream orphan("acgt\n>x\nacgt\n");
  CHECK_THROWS_AS(read_sequences(orphan, SequenceFormat::Fasta, dna), Error);
}

TEST_CASE("reader errors") {
  const auto dna = Alphabet::from_letters("acgt");
  std::istringstream foreign("xyz\n");
  try {
    read_sequences(foreign, SequenceFormat::Plain, dna);
    FAIL("expected AlphabetMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::AlphabetMismatch);
  }
  try {
    read_sequences(std::filesystem::path("/nonexistent/file.txt"), SequenceFormat::Plain, dna);
    FAIL("expected IoError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IoError);
  }
}

TEST_CASE("model files round trip byte for byte") {
  const Provenance prov{"mtdtool fit --order 2", 7, "fnv1a64:0123456789abcdef"};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int m = 1 + static_cast<int>(seed % 3);
    const int l = 1 + static_cast<int>(seed % static_cast<std::uint64_t>(m));
    const auto model = random_mtd(Alphabet::from_letters("acgt"), m, l, Variant::General, seed);
    const std::string text = to_json(ModelDocument{model, prov, std::nullopt});
    const auto doc = parse_model_document(text);
    REQUIRE(std::holds_alternative<MtdModel>(doc.model));
    CHECK(std::get<MtdModel>(doc.model) == model);
    CHECK(to_json(doc) == text);
  }
  const auto theta = to_theta_u(fixtures::pewee_em(), 1);
  const std::string text = to_json(ModelDocument{theta, prov, FitSummary{"em", -481.8, 12, true, 0, 100, 9, 990.5}});
  const auto doc = parse_model_document(text);
  CHECK(std::get<ThetaU>(doc.model) == theta);
  CHECK(doc.fit->iterations == 12);
  CHECK(to_json(doc) == text);
  CHECK(text.find("\"parametrization\": \"theta_u\"") != std::string::npos);
}

TEST_CASE("full markov and non-finite values") {
  const auto full = full_transition_matrix(fixtures::theta_a());
  const double inf = std::numeric_limits<double>::infinity();
  const std::string text =
      to_json(ModelDocument{full, {"x", std::nullopt, ""}, FitSummary{"em", -inf, 1, false, 0, 0, 1, inf}});
  const auto doc = parse_model_document(text);
  CHECK(std::get<FullMarkovModel>(doc.model) == full);
  CHECK_FALSE(doc.provenance.seed.has_value());
  CHECK(std::isinf(doc.fit->final_loglik));
  CHECK(to_json(doc) == text);
}

TEST_CASE("malformed model files") {
  CHECK_THROWS_AS(parse_model_document("not json"), Error);
  CHECK_THROWS_AS(parse_model_document("{\"format_version\": 99}"), Error);
  CHECK_THROWS_AS(parse_model_document("[1, 2]"), Error);
  const auto good = to_json(ModelDocument{fixtures::theta_a(), {"", std::nullopt, ""}, std::nullopt});
  auto bad = good;
  bad.replace(bad.find("\"mtd\""), 5, "\"xyz\"");
  CHECK_THROWS_AS(parse_model_document(bad), Error);
}

TEST_CASE("doubles are written in shortest round-trip form") {
  for (double v : {0.1, 1.0 / 3.0, 5e-324, 0.75305, 1.0, 0.0}) {
    const auto text = format_double(v);
    CHECK(std::strtod(text.c_str(), nullptr) == v);
    CHECK(text.find(',') == std::string::npos);
  }
}

TEST_CASE("digests") {
  CHECK(digest_hex("") == "cbf29ce484222325");
  CHECK(digest_hex("a") == "af63dc4c8601ec8c");
  const auto path = std::filesystem::temp_directory_path() / "mtd_digest_test.txt";
  {
    std::ofstream out(path);
    out << "a";
  }
  CHECK(file_digest(path) == "fnv1a64:af63dc4c8601ec8c");
  std::filesystem::remove(path);
}

TEST_CASE("trace files") {
  std::ostringstream out;
  write_trace(out, std::vector<double>{-10.5, -9.25});
  CHECK(out.str() == "iter\tloglik\n0\t-10.5\n1\t-9.25\n");
}
