// mtdtool: command-line front end for the mtd library.
//
//   mtdtool count | fit | eval | sample | expand | convert | tv-experiment | bic-compare
//
// Exit codes: 0 success, 2 usage or input error, 1 numerical failure.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "mtd/berchtold.hpp"
#include "mtd/counts.hpp"
#include "mtd/em.hpp"
#include "mtd/errors.hpp"
#include "mtd/experiments.hpp"
#include "mtd/io.hpp"
#include "mtd/likelihood.hpp"
#include "mtd/sampling.hpp"
#include "mtd/theta_u.hpp"

namespace {

using namespace mtd;

// Flags every subcommand accepts.
struct CommonOptions {
  std::uint64_t seed = 1;
  std::string alphabet = "acgt";
  int order = 2;
  int lag_order = 1;
  std::string variant = "general";
  double epsilon = 1e-3;
  int restarts = 5;
  std::string out = "-";
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  cmd->add_option("--alphabet", o.alphabet, "Alphabet letters, e.g. acgt or 123 (preset: dna)")->capture_default_str();
  cmd->add_option("--order", o.order, "Model order m")->capture_default_str();
  cmd->add_option("--lag-order", o.lag_order, "Block length l of each lag component")->capture_default_str();
  cmd->add_option("--variant", o.variant, "general | single_matrix")->capture_default_str();
  cmd->add_option("--epsilon", o.epsilon, "Stopping threshold on the log-likelihood increase")->capture_default_str();
  cmd->add_option("--restarts", o.restarts, "EM starting points (1 contingency + random)")->capture_default_str();
  cmd->add_option("--out", o.out, "Output path, '-' for stdout")->capture_default_str();
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_.open(path, std::ios::binary);
      if (!file_) throw Error(ErrorKind::IoError, "cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

SequenceFormat guess_format(const std::string& path, const std::string& requested) {
  if (!requested.empty()) return parse_sequence_format(requested);
  for (const char* ext : {".fa", ".fasta", ".fna", ".ffn"})
    if (path.size() >= std::strlen(ext) && path.compare(path.size() - std::strlen(ext), std::string::npos, ext) == 0)
      return SequenceFormat::Fasta;
  return SequenceFormat::Plain;
}

std::vector<Sequence> load_corpus(const std::string& path, const std::string& format, const Alphabet& alphabet) {
  auto corpus = read_sequences(path, guess_format(path, format), alphabet);
  if (corpus.empty()) throw Error(ErrorKind::EmptyCorpus, "'" + path + "' holds no sequence over the alphabet");
  return corpus;
}

DimensionConvention parse_dimension(const std::string& text) {
  if (text == "theta_u") return DimensionConvention::ThetaU;
  if (text == "raw") return DimensionConvention::Raw;
  throw Error(ErrorKind::FormatError, "unknown dimension convention '" + text + "'");
}

std::string join_command(int argc, char** argv) {
  std::string out;
  for (int i = 0; i < argc; ++i) {
    if (i) out += ' ';
    out += argv[i];
  }
  return out;
}

FullMarkovModel as_full(const AnyModel& model) {
  return std::visit(
      [](const auto& m) -> FullMarkovModel {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, MtdModel>) return full_transition_matrix(m);
        else if constexpr (std::is_same_v<T, FullMarkovModel>) return m;
        else return from_theta_u(m);
      },
      model);
}

const Alphabet& alphabet_of(const AnyModel& model) {
  return std::visit(
      [](const auto& m) -> const Alphabet& {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, MtdModel>) return m.alphabet();
        else return m.alphabet;
      },
      model);
}

void write_table(std::ostream& out, const FullMarkovModel& model) {
  out << "history";
  for (const auto& l : model.alphabet.labels()) out << '\t' << l;
  out << '\n';
  for (std::size_t h = 0; h < model.table.rows(); ++h) {
    out << (model.order == 0 ? std::string("-") : model.alphabet.spell(h, model.order));
    for (double p : model.table.row(h)) out << '\t' << format_double(p);
    out << '\n';
  }
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto dash = item.find('-');
    if (dash != std::string::npos && dash > 0) {
      const int lo = std::stoi(item.substr(0, dash));
      const int hi = std::stoi(item.substr(dash + 1));
      for (int v = lo; v <= hi; ++v) out.push_back(v);
    } else if (!item.empty()) {
      out.push_back(std::stoi(item));
    }
  }
  if (out.empty()) throw Error(ErrorKind::FormatError, "empty integer list '" + text + "'");
  return out;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateLikelihood:
    case ErrorKind::AllRestartsFailed:
    case ErrorKind::NotAnMtdPoint:
    case ErrorKind::NonConvergentStationary:
    case ErrorKind::ModelTooLarge:
    case ErrorKind::EmptyCorpus:
      return 1;
    default:
      return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mixture transition distribution models for high-order Markov chains"};
  app.require_subcommand(1);
  const std::string command_line = join_command(argc, argv);

  // count
  CommonOptions count_opts;
  std::string count_input, count_format;
  auto* count = app.add_subcommand("count", "Tally (m+1)-letter words of a corpus");
  add_common(count, count_opts);
  count->add_option("--input", count_input, "Sequence file")->required();
  count->add_option("--format", count_format, "plain | fasta (default: by extension)");

  // fit
  CommonOptions fit_opts;
  std::string fit_input, fit_format, fit_trace, fit_method = "em", fit_dimension = "theta_u";
  int fit_max_iters = 1000;
  std::optional<double> fit_floor;
  auto* fit = app.add_subcommand("fit", "Estimate an MTD model");
  add_common(fit, fit_opts);
  fit->add_option("--input", fit_input, "Sequence file")->required();
  fit->add_option("--format", fit_format, "plain | fasta (default: by extension)");
  fit->add_option("--max-iters", fit_max_iters, "Iteration cap")->capture_default_str();
  fit->add_option("--method", fit_method, "em | berchtold")->capture_default_str();
  fit->add_option("--trace", fit_trace, "Write the log-likelihood trace (TSV) here");
  fit->add_option("--floor", fit_floor, "Lower bound on mixture terms in the E-step");
  fit->add_option("--dimension", fit_dimension, "theta_u | raw (BIC dimension)")->capture_default_str();

  // eval
  CommonOptions eval_opts;
  std::string eval_model, eval_input, eval_format, eval_dimension = "theta_u";
  bool eval_raw_length = false;
  auto* eval = app.add_subcommand("eval", "Log-likelihood, dimension and BIC of a model on a corpus");
  add_common(eval, eval_opts);
  eval->add_option("--model", eval_model, "Model file")->required();
  eval->add_option("--input", eval_input, "Sequence file")->required();
  eval->add_option("--format", eval_format, "plain | fasta (default: by extension)");
  eval->add_option("--dimension", eval_dimension, "theta_u | raw (BIC dimension)")->capture_default_str();
  eval->add_flag("--raw-length", eval_raw_length, "Use raw sequence length as the BIC sample size");

  // sample
  CommonOptions sample_opts;
  std::string sample_model, sample_prefix;
  std::size_t sample_length = 1000;
  auto* sample = app.add_subcommand("sample", "Draw a sequence from a model");
  add_common(sample, sample_opts);
  sample->add_option("--model", sample_model, "Model file (mtd or full_markov)")->required();
  sample->add_option("--length", sample_length, "Sequence length")->capture_default_str();
  sample->add_option("--prefix", sample_prefix, "First m letters (default: uniform)");

  // expand
  CommonOptions expand_opts;
  std::string expand_model;
  auto* expand = app.add_subcommand("expand", "Full q^m x q transition table of a model");
  add_common(expand, expand_opts);
  expand->add_option("--model", expand_model, "Model file")->required();

  // convert
  CommonOptions convert_opts;
  std::string convert_model, convert_to = "theta_u", convert_reference;
  auto* convert = app.add_subcommand("convert", "Change parametrization: mtd -> theta_u -> full");
  add_common(convert, convert_opts);
  convert->add_option("--model", convert_model, "Model file")->required();
  convert->add_option("--to", convert_to, "theta_u | full")->capture_default_str();
  convert->add_option("--reference", convert_reference, "Reference letter u (default: first symbol)");

  // tv-experiment
  CommonOptions tv_opts;
  tv_opts.order = 5;
  std::string tv_fit_orders = "2-6";
  std::size_t tv_length = 5000;
  int tv_replicates = 20, tv_word_len = 6;
  auto* tv = app.add_subcommand("tv-experiment", "Total-variation error of full Markov fits by order");
  add_common(tv, tv_opts);
  tv->add_option("--fit-orders", tv_fit_orders, "Orders to fit, e.g. 2-6 or 1,3,5")->capture_default_str();
  tv->add_option("--length", tv_length, "Sampled sequence length")->capture_default_str();
  tv->add_option("--replicates", tv_replicates, "Number of sampled sequences")->capture_default_str();
  tv->add_option("--word-len", tv_word_len, "Word length of the compared distributions")->capture_default_str();

  // bic-compare
  CommonOptions bic_opts;
  std::string bic_input, bic_format, bic_orders = "1-3", bic_lag_orders = "1", bic_dimension = "theta_u";
  bool bic_raw_length = false;
  int bic_max_iters = 1000;
  auto* bicc = app.add_subcommand("bic-compare", "BIC(full Markov) - BIC(MTD) by order");
  add_common(bicc, bic_opts);
  bicc->add_option("--input", bic_input, "Sequence file")->required();
  bicc->add_option("--format", bic_format, "plain | fasta (default: by extension)");
  bicc->add_option("--orders", bic_orders, "Orders, e.g. 1-6")->capture_default_str();
  bicc->add_option("--lag-orders", bic_lag_orders, "Lag orders l, e.g. 1,2")->capture_default_str();
  bicc->add_option("--max-iters", bic_max_iters, "EM iteration cap")->capture_default_str();
  bicc->add_option("--dimension", bic_dimension, "theta_u | raw (MTD dimension)")->capture_default_str();
  bicc->add_flag("--raw-length", bic_raw_length, "Use raw sequence length as the BIC sample size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (count->parsed()) {
      const auto alphabet = Alphabet::from_letters(count_opts.alphabet);
      const auto corpus = load_corpus(count_input, count_format, alphabet);
      Output out(count_opts.out);
      write_counts(out.stream(), count_ngrams(corpus, count_opts.order));
    } else if (fit->parsed()) {
      const auto alphabet = Alphabet::from_letters(fit_opts.alphabet);
      const auto corpus = load_corpus(fit_input, fit_format, alphabet);
      const auto counts = count_ngrams(corpus, fit_opts.order);
      if (counts.empty()) throw Error(ErrorKind::EmptyCorpus, "corpus has no (m+1)-letter window");
      EmConfig config;
      config.epsilon = fit_opts.epsilon;
      config.max_iters = fit_max_iters;
      config.n_restarts = fit_opts.restarts;
      config.seed = fit_opts.seed;
      config.floor = fit_floor;
      config.variant = parse_variant(fit_opts.variant);
      config.lag_order = fit_opts.lag_order;
      config.dimension = parse_dimension(fit_dimension);

      std::optional<FitReport> report;
      if (fit_method == "em") {
        report = fit_with_restarts(counts, config);
      } else if (fit_method == "berchtold") {
        BerchtoldConfig bc;
        bc.epsilon = config.epsilon;
        bc.max_iters = fit_max_iters;
        report = berchtold_fit(counts, init_contingency(counts, config.lag_order, config.variant), bc);
        finalize_report(*report, counts, config.dimension);
      } else {
        throw Error(ErrorKind::FormatError, "unknown method '" + fit_method + "'");
      }

      ModelDocument doc{report->model, {command_line, fit_opts.seed, file_digest(fit_input)},
                        FitSummary{fit_method, report->final_loglik, report->iterations, report->converged,
                                   report->restart_index, report->n_terms, report->dimension, report->bic}};
      if (fit_opts.out == "-") {
        std::cout << to_json(doc);
      } else {
        write_model_file(fit_opts.out, doc);
        std::cout << "method\trestart\titerations\tconverged\tloglik\tdimension\tbic\n"
                  << fit_method << '\t' << report->restart_index << '\t' << report->iterations << '\t'
                  << (report->converged ? "true" : "false") << '\t' << format_double(report->final_loglik) << '\t'
                  << report->dimension << '\t' << format_double(report->bic) << '\n';
      }
      if (!fit_trace.empty()) {
        Output trace(fit_trace);
        write_trace(trace.stream(), report->loglik_trace);
      }
    } else if (eval->parsed()) {
      const auto doc = read_model_file(eval_model);
      const Alphabet& alphabet = alphabet_of(doc.model);
      const auto corpus = load_corpus(eval_input, eval_format, alphabet);
      const auto convention = parse_dimension(eval_dimension);

      double loglik = 0.0;
      std::uint64_t terms = 0, dim_theta = 0, dim_raw = 0;
      std::visit(
          [&](const auto& model) {
            using T = std::decay_t<decltype(model)>;
            if constexpr (std::is_same_v<T, MtdModel>) {
              const auto counts = count_ngrams(corpus, model.order());
              const auto ll = counts_loglik(model, counts);
              loglik = ll.value;
              terms = ll.terms;
              dim_theta = model_dimension(model, DimensionConvention::ThetaU);
              dim_raw = model_dimension(model, DimensionConvention::Raw);
            } else {
              const auto full = as_full(model);
              const auto counts = count_ngrams(corpus, full.order);
              const auto ll = counts_loglik(full, counts);
              loglik = ll.value;
              terms = ll.terms;
              if constexpr (std::is_same_v<T, ThetaU>) {
                dim_theta = dim_theta_u(model.order, model.lag_order, full.q());
                dim_raw = dim_raw_mtd(model.order, model.lag_order, full.q());
              } else {
                dim_theta = dim_raw = dim_full_markov(full.order, full.q());
              }
            }
          },
          doc.model);
      std::uint64_t n = terms;
      if (eval_raw_length) {
        n = 0;
        for (const auto& s : corpus) n += s.size();
      }
      const auto dim = convention == DimensionConvention::ThetaU ? dim_theta : dim_raw;
      Output out(eval_opts.out);
      out.stream() << "loglik\tn_terms\tdim_theta_u\tdim_raw\tbic\n"
                   << format_double(loglik) << '\t' << terms << '\t' << dim_theta << '\t' << dim_raw << '\t'
                   << format_double(bic(loglik, dim, std::max<std::uint64_t>(n, 1))) << '\n';
    } else if (sample->parsed()) {
      const auto doc = read_model_file(sample_model);
      SampleInit init;
      const Alphabet& alphabet = alphabet_of(doc.model);
      if (!sample_prefix.empty()) init = SampleInit::given(Sequence::from_string(alphabet, sample_prefix).data);
      const Sequence seq = std::visit(
          [&](const auto& model) -> Sequence {
            using T = std::decay_t<decltype(model)>;
            if constexpr (std::is_same_v<T, ThetaU>)
              return sample_sequence(from_theta_u(model), sample_length, sample_opts.seed, init);
            else
              return sample_sequence(model, sample_length, sample_opts.seed, init);
          },
          doc.model);
      Output out(sample_opts.out);
      out.stream() << seq.to_string() << '\n';
    } else if (expand->parsed()) {
      const auto doc = read_model_file(expand_model);
      const auto full = as_full(doc.model);
      if (expand_opts.out == "-") {
        write_table(std::cout, full);
      } else {
        write_model_file(expand_opts.out, ModelDocument{full, {command_line, std::nullopt, doc.provenance.corpus_digest}, {}});
      }
    } else if (convert->parsed()) {
      const auto doc = read_model_file(convert_model);
      const Provenance prov{command_line, std::nullopt, doc.provenance.corpus_digest};
      std::optional<AnyModel> result;
      if (convert_to == "theta_u") {
        const auto* mtd_model = std::get_if<MtdModel>(&doc.model);
        if (!mtd_model) throw Error(ErrorKind::FormatError, "conversion to theta_u needs an mtd model file");
        const Symbol u = convert_reference.empty() ? 0 : mtd_model->alphabet().index_of(convert_reference);
        result.emplace(to_theta_u(*mtd_model, u));
      } else if (convert_to == "full") {
        result.emplace(as_full(doc.model));
      } else {
        throw Error(ErrorKind::FormatError, "unknown conversion target '" + convert_to + "'");
      }
      Output out(convert_opts.out);
      out.stream() << to_json(ModelDocument{std::move(*result), prov, {}});
    } else if (tv->parsed()) {
      TvExperimentConfig config;
      config.alphabet = Alphabet::from_letters(tv_opts.alphabet);
      config.generator_order = tv_opts.order;
      config.length = tv_length;
      config.fit_orders = parse_int_list(tv_fit_orders);
      config.replicates = tv_replicates;
      config.word_length = tv_word_len;
      config.seed = tv_opts.seed;
      const auto result = tv_experiment(config);
      Output out(tv_opts.out);
      write_tv_table(out.stream(), config, result);
    } else if (bicc->parsed()) {
      const auto alphabet = Alphabet::from_letters(bic_opts.alphabet);
      const auto corpus = load_corpus(bic_input, bic_format, alphabet);
      BicCompareConfig config;
      config.orders = parse_int_list(bic_orders);
      config.lag_orders = parse_int_list(bic_lag_orders);
      config.raw_length = bic_raw_length;
      config.em.epsilon = bic_opts.epsilon;
      config.em.n_restarts = bic_opts.restarts;
      config.em.seed = bic_opts.seed;
      config.em.max_iters = bic_max_iters;
      config.em.variant = parse_variant(bic_opts.variant);
      config.em.dimension = parse_dimension(bic_dimension);
      const auto rows = bic_compare(corpus, config);
      Output out(bic_opts.out);
      write_bic_table(out.stream(), rows);
    }
  } catch (const Error& e) {
    std::cerr << "mtdtool: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "mtdtool: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
