#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

#include "fixtures.hpp"
#include "mtd/io.hpp"
#include "mtd/likelihood.hpp"
#include "mtd/sampling.hpp"
#include "mtd/theta_u.hpp"

using namespace mtd;
namespace fs = std::filesystem;

namespace {

struct Workspace {
  fs::path dir;
  Workspace() {
    dir = fs::temp_directory_path() / ("mtdtool_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~Workspace() { fs::remove_all(dir); }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

int run(const std::string& args, const std::string& stdout_path = "/dev/null") {
  const std::string cmd = std::string(MTDTOOL_PATH) + " " + args + " > " + stdout_path + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::vector<std::vector<std::string>> read_tsv(const std::string& path) {
  std::ifstream in(path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, '\t')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("expand reproduces the printed table") {
  Workspace ws;
  write_model_file(ws.path("theta.json"), ModelDocument{fixtures::theta_a(), {"fixture", std::nullopt, ""}, {}});
  REQUIRE(run("expand --model " + ws.path("theta.json"), ws.path("pi.tsv")) == 0);
  const auto rows = read_tsv(ws.path("pi.tsv"));
  REQUIRE(rows.size() == 17);
  CHECK(rows[0] == std::vector<std::string>{"history", "a", "c", "g", "t"});
  CHECK(rows[1][0] == "aa");
  CHECK(rows[16][0] == "tt");
  for (std::size_t r = 0; r < 16; ++r)
    for (std::size_t j = 0; j < 4; ++j)
      CHECK(std::abs(std::stod(rows[r + 1][j + 1]) - fixtures::printed_pi_a()[r][j]) <= 0.005);
}

TEST_CASE("fit then eval agree, and re-runs are byte-identical") {
  Workspace ws;
  const auto seq = sample_sequence(fixtures::pewee_em(), 2000, 5);
  {
    std::ofstream out(ws.path("song.txt"));
    out << seq.to_string() << '\n';
  }
  const std::string fit = "fit --alphabet 123 --order 2 --seed 3 --input " + ws.path("song.txt");
  REQUIRE(run(fit + " --out " + ws.path("a.json") + " --trace " + ws.path("a.tsv")) == 0);
  const auto first = read_file(ws.path("a.json"));
  const auto first_trace = read_file(ws.path("a.tsv"));
  REQUIRE(run(fit + " --out " + ws.path("a.json") + " --trace " + ws.path("a.tsv")) == 0);
  CHECK(read_file(ws.path("a.json")) == first);
  CHECK(read_file(ws.path("a.tsv")) == first_trace);

  const auto doc = read_model_file(ws.path("a.json"));
  REQUIRE(doc.fit.has_value());
  CHECK(doc.provenance.seed == std::uint64_t{3});
  CHECK(doc.provenance.corpus_digest == file_digest(ws.path("song.txt")));

  REQUIRE(run("eval --model " + ws.path("a.json") + " --input " + ws.path("song.txt"), ws.path("eval.tsv")) == 0);
  const auto rows = read_tsv(ws.path("eval.tsv"));
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == std::vector<std::string>{"loglik", "n_terms", "dim_theta_u", "dim_raw", "bic"});
  CHECK(rows[1][0] == format_double(doc.fit->final_loglik));
  CHECK(rows[1][2] == "10");
  CHECK(rows[1][3] == "13");
}

TEST_CASE("convert round trip equals expand") {
  Workspace ws;
  const auto model = random_mtd(Alphabet::from_letters("acgt"), 3, 2, Variant::General, 8);
  write_model_file(ws.path("m.json"), ModelDocument{model, {"fixture", std::nullopt, ""}, {}});
  REQUIRE(run("convert --to theta_u --reference g --model " + ws.path("m.json") + " --out " + ws.path("t.json")) == 0);
  REQUIRE(run("convert --to full --model " + ws.path("t.json") + " --out " + ws.path("f.json")) == 0);
  REQUIRE(run("expand --model " + ws.path("m.json") + " --out " + ws.path("e.json")) == 0);
  const auto theta = std::get<ThetaU>(read_model_file(ws.path("t.json")).model);
  CHECK(theta.reference == 2);
  const auto a = std::get<FullMarkovModel>(read_model_file(ws.path("f.json")).model);
  const auto b = std::get<FullMarkovModel>(read_model_file(ws.path("e.json")).model);
  for (std::size_t i = 0; i < a.table.values().size(); ++i)
    CHECK(std::abs(a.table.values()[i] - b.table.values()[i]) <= 1e-12);
}

TEST_CASE("sample, count and the experiment commands") {
  Workspace ws;
  write_model_file(ws.path("m.json"), ModelDocument{fixtures::theta_a(), {"fixture", std::nullopt, ""}, {}});
  REQUIRE(run("sample --model " + ws.path("m.json") + " --length 300 --seed 4 --out " + ws.path("s.txt")) == 0);
  const auto text = read_file(ws.path("s.txt"));
  CHECK(text.size() == 301);
  CHECK(text == sample_sequence(fixtures::theta_a(), 300, 4).to_string() + "\n");

  REQUIRE(run("count --order 1 --input " + ws.path("s.txt"), ws.path("c.tsv")) == 0);
  const auto counts = read_tsv(ws.path("c.tsv"));
  CHECK(counts[0] == std::vector<std::string>{"word", "count"});
  std::uint64_t total = 0;
  for (std::size_t i = 1; i < counts.size(); ++i) total += std::stoull(counts[i][1]);
  CHECK(total == 299);

  REQUIRE(run("tv-experiment --replicates 0", ws.path("tv.tsv")) == 0);
  CHECK(read_file(ws.path("tv.tsv")) == "replicate\tfit_order\ttv\n");

  REQUIRE(run("bic-compare --orders 1-2 --lag-orders 1 --input " + ws.path("s.txt"), ws.path("bic.tsv")) == 0);
  CHECK(read_tsv(ws.path("bic.tsv")).size() == 3);
}

TEST_CASE("exit codes") {
  Workspace ws;
  CHECK(run("") == 2);
  CHECK(run("--help") == 0);
  CHECK(run("fit --order nope --input x") == 2);
  CHECK(run("eval --model /nonexistent.json --input /nonexistent.txt") == 2);
  CHECK(run("fit --input /nonexistent.txt") == 2);

  const auto abc = Alphabet::from_letters("abc");
  const auto t1 = StochasticMatrix::from_rows({{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 1.0, 0.0}});
  const auto t2 = StochasticMatrix::from_rows({{1.0, 0.0, 0.0}, {0.0, 0.0, 1.0}, {0.0, 0.0, 1.0}});
  write_model_file(ws.path("bad.json"),
                   ModelDocument{ThetaU(abc, 2, 1, 0, {t1, t2}, {1.0, 0.0, 0.0}), {"fixture", std::nullopt, ""}, {}});
  CHECK(run("expand --model " + ws.path("bad.json")) == 1);
}
