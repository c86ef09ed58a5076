#include "mtd/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "mtd/errors.hpp"

namespace mtd {

using Json = nlohmann::ordered_json;

SequenceFormat parse_sequence_format(std::string_view text) {
  if (text == "plain") return SequenceFormat::Plain;
  if (text == "fasta") return SequenceFormat::Fasta;
  throw Error(ErrorKind::FormatError, "unknown sequence format '" + std::string(text) + "'");
}

namespace {

// Splits one record's text into maximal runs of alphabet letters.
void append_fragments(std::vector<Sequence>& out, const Alphabet& alphabet, std::string_view text,
                      const std::string& name, std::size_t& matched, std::size_t& foreign) {
  std::vector<Symbol> run;
  auto flush = [&] {
    if (!run.empty()) out.emplace_back(alphabet, std::move(run), name);
    run.clear();
  };
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (const auto s = alphabet.find(c)) {
      run.push_back(*s);
      ++matched;
    } else {
      ++foreign;
      flush();
    }
  }
  flush();
}

}  // namespace

std::vector<Sequence> read_sequences(std::istream& in, SequenceFormat format, const Alphabet& alphabet) {
  std::vector<Sequence> out;
  std::size_t matched = 0;
  std::size_t foreign = 0;
  std::string line;
  if (format == SequenceFormat::Plain) {
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      append_fragments(out, alphabet, line, "line" + std::to_string(line_no), matched, foreign);
    }
  } else {
    std::optional<std::string> name;
    std::string body;
    auto finish = [&] {
      if (name) append_fragments(out, alphabet, body, *name, matched, foreign);
      body.clear();
    };
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty() && line.front() == '>') {
        finish();
        const auto start = line.find_first_not_of(" \t", 1);
        name = start == std::string::npos ? std::string() : line.substr(start);
      } else if (!line.empty() && line.front() == ';') {
        continue;
      } else {
        if (!name) throw Error(ErrorKind::FormatError, "FASTA sequence data before the first '>' header");
        body += line;
        body += '\n';
      }
    }
    finish();
  }
  if (matched == 0 && foreign > 0)
    throw Error(ErrorKind::AlphabetMismatch, "no input character belongs to alphabet '" + alphabet.letters() + "'");
  return out;
}

std::vector<Sequence> read_sequences(const std::filesystem::path& path, SequenceFormat format,
                                     const Alphabet& alphabet) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path.string() + "'");
  return read_sequences(in, format, alphabet);
}

std::string format_double(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

void write_trace(std::ostream& out, std::span<const double> trace) {
  out << "iter\tloglik\n";
  for (std::size_t k = 0; k < trace.size(); ++k) out << k << '\t' << format_double(trace[k]) << '\n';
}

std::string digest_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  for (int i = 15; i >= 0; --i) {
    buf[i] = "0123456789abcdef"[h & 0xf];
    h >>= 4;
  }
  buf[16] = '\0';
  return buf;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string file_digest(const std::filesystem::path& path) { return "fnv1a64:" + digest_hex(read_file(path)); }

// ---- model documents ------------------------------------------------------

namespace {

Json matrix_json(const StochasticMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(Json(std::vector<double>(m.row(r).begin(), m.row(r).end())));
  return rows;
}

StochasticMatrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::FormatError, "matrix must be an array of rows");
  return StochasticMatrix::from_rows(j.get<std::vector<std::vector<double>>>());
}

Json nullable(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

double from_nullable(const Json& j) {
  return j.is_null() ? -std::numeric_limits<double>::infinity() : j.get<double>();
}

template <class T>
T required(const Json& doc, const char* key) {
  if (!doc.contains(key)) throw Error(ErrorKind::FormatError, std::string("model file lacks key '") + key + "'");
  try {
    return doc.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::FormatError, std::string("bad value for '") + key + "': " + e.what());
  }
}

}  // namespace

std::string to_json(const ModelDocument& doc) {
  Json out;
  out["format_version"] = kModelFormatVersion;
  std::visit(
      [&](const auto& model) {
        using T = std::decay_t<decltype(model)>;
        if constexpr (std::is_same_v<T, MtdModel>) {
          out["model_kind"] = "mtd";
          out["alphabet"] = model.alphabet().labels();
          out["m"] = model.order();
          out["l"] = model.lag_order();
          out["variant"] = std::string(to_string(model.variant()));
          out["phi"] = model.phi();
          Json mats = Json::array();
          for (const auto& pi : model.matrices()) mats.push_back(matrix_json(pi));
          out["matrices"] = std::move(mats);
        } else if constexpr (std::is_same_v<T, FullMarkovModel>) {
          out["model_kind"] = "full_markov";
          out["alphabet"] = model.alphabet.labels();
          out["m"] = model.order;
          out["l"] = model.order;
          out["variant"] = "general";
          out["phi"] = std::vector<double>{1.0};
          out["matrices"] = Json::array({matrix_json(model.table)});
        } else {
          out["model_kind"] = "theta_u";
          out["parametrization"] = "theta_u";
          out["alphabet"] = model.alphabet.labels();
          out["m"] = model.order;
          out["l"] = model.lag_order;
          out["variant"] = "general";
          out["reference"] = model.alphabet.label(model.reference);
          out["base"] = model.base;
          out["phi"] = Json::array();
          Json mats = Json::array();
          for (const auto& t : model.tables) mats.push_back(matrix_json(t));
          out["matrices"] = std::move(mats);
        }
      },
      doc.model);
  Json prov;
  prov["command"] = doc.provenance.command;
  prov["seed"] = doc.provenance.seed ? Json(*doc.provenance.seed) : Json(nullptr);
  prov["corpus_digest"] = doc.provenance.corpus_digest;
  out["provenance"] = std::move(prov);
  if (doc.fit) {
    const auto& f = *doc.fit;
    out["fit"] = Json{{"method", f.method},         {"final_loglik", nullable(f.final_loglik)},
                      {"iterations", f.iterations}, {"converged", f.converged},
                      {"restart_index", f.restart_index}, {"n_terms", f.n_terms},
                      {"dimension", f.dimension},   {"bic", nullable(f.bic)}};
  }
  return out.dump(2) + "\n";
}

ModelDocument parse_model_document(std::string_view json_text) {
  Json doc;
  try {
    doc = Json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::FormatError, std::string("model file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorKind::FormatError, "model file must hold a JSON object");
  const int version = required<int>(doc, "format_version");
  if (version != kModelFormatVersion)
    throw Error(ErrorKind::FormatError, "unsupported format_version " + std::to_string(version));

  const Alphabet alphabet(required<std::vector<std::string>>(doc, "alphabet"));
  const auto kind = required<std::string>(doc, "model_kind");
  const int m = required<int>(doc, "m");
  const int l = required<int>(doc, "l");
  if (!doc.contains("matrices") || !doc["matrices"].is_array())
    throw Error(ErrorKind::FormatError, "model file lacks 'matrices'");
  std::vector<StochasticMatrix> matrices;
  for (const auto& mj : doc["matrices"]) matrices.push_back(matrix_from_json(mj));

  std::optional<AnyModel> model;
  if (kind == "mtd") {
    model.emplace(MtdModel(alphabet, m, l, parse_variant(required<std::string>(doc, "variant")),
                           required<std::vector<double>>(doc, "phi"), std::move(matrices)));
  } else if (kind == "full_markov") {
    if (matrices.size() != 1) throw Error(ErrorKind::FormatError, "full_markov model needs exactly one matrix");
    model.emplace(FullMarkovModel(alphabet, m, std::move(matrices.front())));
  } else if (kind == "theta_u") {
    const Symbol u = alphabet.index_of(required<std::string>(doc, "reference"));
    model.emplace(ThetaU(alphabet, m, l, u, std::move(matrices), required<std::vector<double>>(doc, "base")));
  } else {
    throw Error(ErrorKind::FormatError, "unknown model_kind '" + kind + "'");
  }

  ModelDocument out{std::move(*model), {}, std::nullopt};
  if (doc.contains("provenance")) {
    const auto& p = doc["provenance"];
    out.provenance.command = p.value("command", "");
    if (p.contains("seed") && !p["seed"].is_null()) out.provenance.seed = p["seed"].get<std::uint64_t>();
    out.provenance.corpus_digest = p.value("corpus_digest", "");
  }
  if (doc.contains("fit")) {
    const auto& f = doc["fit"];
    FitSummary s;
    s.method = f.value("method", "");
    s.final_loglik = from_nullable(f.at("final_loglik"));
    s.iterations = f.value("iterations", 0);
    s.converged = f.value("converged", false);
    s.restart_index = f.value("restart_index", 0);
    s.n_terms = f.value("n_terms", std::uint64_t{0});
    s.dimension = f.value("dimension", std::uint64_t{0});
    s.bic = f.at("bic").is_null() ? std::numeric_limits<double>::infinity() : f.at("bic").get<double>();
    out.fit = s;
  }
  return out;
}

void write_model_file(const std::filesystem::path& path, const ModelDocument& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot write '" + path.string() + "'");
  out << to_json(doc);
  if (!out) throw Error(ErrorKind::IoError, "failed writing '" + path.string() + "'");
}

ModelDocument read_model_file(const std::filesystem::path& path) { return parse_model_document(read_file(path)); }

}  // namespace mtd
