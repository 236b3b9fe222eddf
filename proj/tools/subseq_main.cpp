// subseq: learn subsequence-histogram models, classify received sequences,
// and run seeded Monte Carlo studies over deletion channels.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "subseq/channel.hpp"
#include "subseq/experiment.hpp"
#include "subseq/oracle.hpp"
#include "subseq/selftest.hpp"

namespace {

using namespace subseq;

std::optional<Alphabet> parse_alphabet_flag(const std::string& text) {
  if (text.empty()) return std::nullopt;
  std::vector<std::string> symbols;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) symbols.push_back(tok);
  if (symbols.size() == 1 && symbols[0].size() > 1) {
    // "01" shorthand: one symbol per character.
    return Alphabet::from_chars(symbols[0]);
  }
  return Alphabet(symbols);
}

void print_matrix(const CountMatrix& mat, const Alphabet& alphabet,
                  std::ostream& out) {
  for (std::size_t r = 0; r < mat.rows(); ++r) {
    out << "  " << alphabet.symbol(static_cast<SymbolIndex>(r)) << ':';
    for (std::size_t c = 0; c < mat.cols(); ++c) out << ' ' << mat.at(r, c);
    out << '\n';
  }
}

int cmd_learn(const std::string& vocab_path, const std::string& model_out,
              const std::string& alphabet_flag, const std::string& label,
              double prior, const std::string& show_psi) {
  auto declared = parse_alphabet_flag(alphabet_flag);
  Vocabulary v = load_vocabulary(vocab_path, declared);
  if (!label.empty()) {
    Vocabulary relabeled(label, v.alphabet(), v.prior());
    for (std::size_t k = 0; k < v.size(); ++k) relabeled.insert(v.word(k));
    v = std::move(relabeled);
  }
  if (prior >= 0.0) v.set_prior(prior);

  const RecognitionModel model = learn_model(v);
  save_model(model, model_out);
  std::cout << "label: " << model.label << "\nwords: " << model.vocab_size
            << "\nmax_len: " << model.max_len()
            << "\nstored_counts: " << model.count_entries()
            << "\nmodel: " << model_out << '\n';
  if (!show_psi.empty()) {
    const auto comma = show_psi.find(',');
    if (comma == std::string::npos)
      throw Error("--show-psi expects n,m");
    const std::size_t n = std::stoull(show_psi.substr(0, comma));
    const std::size_t m = std::stoull(show_psi.substr(comma + 1));
    const CountMatrix* mat = model.psi.matrix(n, m);
    std::cout << "psi[" << n << ',' << m << "]:\n";
    if (mat)
      print_matrix(*mat, model.alphabet, std::cout);
    else
      std::cout << "  (no words of length " << n << ")\n";
  }
  return 0;
}

int cmd_recognize(const std::vector<std::string>& model_paths,
                  const std::vector<std::string>& vocab_paths,
                  const std::string& sequence_text, double p,
                  const std::string& method_name_flag, double eps,
                  const std::string& format) {
  const auto method = method_from_name(method_name_flag);
  if (!method) throw Error("unknown method '" + method_name_flag + "'");

  Decision decision;
  if (*method == Method::exact_map) {
    if (vocab_paths.size() < 2)
      throw Error("exact-map needs at least two --vocab files");
    std::vector<Vocabulary> vocabularies;
    for (const auto& path : vocab_paths)
      vocabularies.push_back(load_vocabulary(path));
    const double prior = 1.0 / static_cast<double>(vocabularies.size());
    for (auto& v : vocabularies) v.set_prior(prior);
    const ObservedSequence s =
        parse_sequence(sequence_text, vocabularies[0].alphabet());
    decision = classify_map(vocabularies, s, p, eps);
  } else {
    if (model_paths.size() < 2)
      throw Error("recognition needs at least two --model files");
    std::vector<RecognitionModel> models;
    for (const auto& path : model_paths) models.push_back(load_model(path));
    const ObservedSequence s =
        parse_sequence(sequence_text, models[0].alphabet);
    decision = *method == Method::subsequence_histogram
                   ? classify(models, s, p, eps)
                   : classify_regular_histogram(models, s, eps);
  }

  const std::string outcome = decision.draw() ? "draw" : *decision.winner;
  if (format == "csv") {
    std::cout << "decision,method,label,total\n";
    char buf[48];
    for (const auto& b : decision.scores) {
      std::snprintf(buf, sizeof(buf), "%.12g", b.total);
      std::cout << outcome << ',' << method_name(decision.method) << ','
                << b.label << ',' << buf << '\n';
    }
  } else {
    std::cout << "decision: " << outcome << '\n'
              << "method: " << method_name(decision.method) << '\n';
    for (const auto& b : decision.scores) {
      char buf[48];
      std::snprintf(buf, sizeof(buf), "%.12g", b.total);
      std::cout << "  " << b.label << ": total=" << buf << '\n';
    }
  }
  return 0;
}

int cmd_channel(const std::string& word_text, const std::string& alphabet_flag,
                double p, std::uint64_t seed, std::uint64_t count) {
  auto declared = parse_alphabet_flag(alphabet_flag);
  const Alphabet alphabet =
      declared ? *declared : Alphabet::from_chars("01");
  const Word w = parse_word(word_text, alphabet);
  const DeletionChannel channel{p, seed};
  for (std::uint64_t k = 0; k < count; ++k) {
    const ObservedSequence s = channel.transmit(w, k);
    std::cout << format_sequence(s, alphabet) << '\n';
  }
  return 0;
}

int cmd_oracle(const std::vector<std::string>& vocab_paths, double p,
               std::uint64_t budget, const std::string& out_path) {
  if (vocab_paths.size() != 2)
    throw Error("oracle error analysis needs exactly two --vocab files");
  Vocabulary v1 = load_vocabulary(vocab_paths[0]);
  Vocabulary v2 = load_vocabulary(vocab_paths[1]);
  v1.set_prior(0.5);
  v2.set_prior(0.5);
  const ErrorAnalysisReport report = error_analysis(v1, v2, p, budget);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw Error("cannot write report to " + out_path);
    write_error_report_csv(report, out);
  }
  write_error_report_csv(report, std::cout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"subsequence-histogram vocabulary recognition workbench"};
  app.require_subcommand(1);
  app.set_config("--config");

  // learn
  auto* learn = app.add_subcommand("learn", "learn a model from a vocabulary");
  std::string vocab_path, model_out, alphabet_flag, label, show_psi;
  double learn_prior = -1.0;
  learn->add_option("--vocab", vocab_path, "vocabulary text file")
      ->required()
      ->envname("SUBSEQ_VOCAB");
  learn->add_option("--out", model_out, "model file to write")
      ->required()
      ->envname("SUBSEQ_OUT");
  learn->add_option("--alphabet", alphabet_flag,
                    "declared alphabet, e.g. \"a c g t\" or \"01\"")
      ->envname("SUBSEQ_ALPHABET");
  learn->add_option("--label", label, "model label (default: file stem)")
      ->envname("SUBSEQ_LABEL");
  learn->add_option("--prior", learn_prior, "vocabulary prior")
      ->envname("SUBSEQ_PRIOR");
  learn->add_option("--show-psi", show_psi,
                    "print one subsequence matrix, e.g. 4,2");

  // recognize
  auto* recognize =
      app.add_subcommand("recognize", "classify a received sequence");
  std::vector<std::string> model_paths, vocab_paths;
  std::string sequence_text, method_flag = "subsequence-histogram",
              format = "text";
  double p = 0.2, eps = kDefaultDrawTolerance;
  recognize->add_option("--model", model_paths, "model files (repeatable)")
      ->envname("SUBSEQ_MODEL");
  recognize->add_option("--vocab", vocab_paths,
                        "vocabulary files (exact-map only)")
      ->envname("SUBSEQ_VOCAB");
  recognize->add_option("--sequence", sequence_text, "received sequence")
      ->required()
      ->envname("SUBSEQ_SEQUENCE");
  recognize->add_option("--p", p, "deletion probability")
      ->envname("SUBSEQ_P");
  recognize
      ->add_option("--method", method_flag,
                   "subsequence-histogram | regular-histogram | exact-map")
      ->envname("SUBSEQ_METHOD");
  recognize->add_option("--epsilon", eps, "relative draw tolerance")
      ->envname("SUBSEQ_EPSILON");
  recognize->add_option("--format", format, "text | csv")
      ->envname("SUBSEQ_FORMAT");

  // channel
  auto* channel =
      app.add_subcommand("channel", "push a word through the deletion channel");
  std::string word_text, channel_alphabet;
  double channel_p = 0.3;
  std::uint64_t channel_seed = 1, channel_count = 1;
  channel->add_option("--word", word_text, "input word")->required();
  channel->add_option("--alphabet", channel_alphabet,
                      "alphabet (default: 01)");
  channel->add_option("--p", channel_p, "deletion probability");
  channel->add_option("--seed", channel_seed, "channel seed")
      ->envname("SUBSEQ_SEED");
  channel->add_option("--count", channel_count, "number of transmissions");

  // experiment
  auto* experiment =
      app.add_subcommand("experiment", "seeded Monte Carlo error study");
  ExperimentConfig config;
  std::vector<std::string> classifier_names = {"subsequence-histogram"};
  std::string draw_policy_flag = "half", out_path;
  bool no_timing = false;
  experiment->add_option("--scenario", config.scenario, "iid | mirror | files")
      ->envname("SUBSEQ_SCENARIO");
  experiment
      ->add_option("--param", config.params,
                   "scenario parameters (deviations 0..4 or cases 1..5)")
      ->envname("SUBSEQ_PARAM");
  experiment->add_option("--p", config.deletion_probs, "deletion probabilities")
      ->envname("SUBSEQ_P");
  experiment->add_option("--words", config.words_per_vocab, "words per vocabulary")
      ->envname("SUBSEQ_WORDS");
  experiment->add_option("--len-min", config.len_min, "minimum word length")
      ->envname("SUBSEQ_LEN_MIN");
  experiment->add_option("--len-max", config.len_max, "maximum word length")
      ->envname("SUBSEQ_LEN_MAX");
  experiment->add_option("--trials", config.trials, "Monte Carlo trials per cell")
      ->envname("SUBSEQ_TRIALS");
  experiment->add_option("--classifier", classifier_names,
                         "classifiers to run (repeatable)")
      ->envname("SUBSEQ_CLASSIFIER");
  experiment->add_option("--draw-policy", draw_policy_flag,
                         "half | wrong | excluded")
      ->envname("SUBSEQ_DRAW_POLICY");
  experiment->add_option("--seed", config.master_seed, "master seed")
      ->envname("SUBSEQ_SEED");
  experiment->add_option("--oracle-budget", config.oracle_budget,
                         "max vocabulary size for exact-map")
      ->envname("SUBSEQ_ORACLE_BUDGET");
  experiment->add_option("--vocab", config.vocab_files,
                         "vocabulary files (files scenario)");
  experiment->add_option("--out", out_path, "CSV report path")
      ->envname("SUBSEQ_OUT");
  experiment->add_flag("--no-timing", no_timing,
                       "zero the seconds column for byte-reproducible reports");

  // oracle
  auto* oracle =
      app.add_subcommand("oracle", "exact error analysis for two vocabularies");
  std::vector<std::string> oracle_vocabs;
  double oracle_p = 0.2;
  std::uint64_t oracle_budget = 4'000'000;
  std::string oracle_out;
  oracle->add_option("--vocab", oracle_vocabs, "two vocabulary files")
      ->required();
  oracle->add_option("--p", oracle_p, "deletion probability");
  oracle->add_option("--budget", oracle_budget, "max enumerated sequences");
  oracle->add_option("--out", oracle_out, "CSV report path");

  // selftest
  auto* selftest =
      app.add_subcommand("selftest", "run the embedded invariant suite");
  bool fault_inject = false;
  selftest->add_flag("--fault-inject-alpha", fault_inject,
                     "corrupt one placement-count entry (the identity check "
                     "must then fail)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (learn->parsed())
      return cmd_learn(vocab_path, model_out, alphabet_flag, label,
                       learn_prior, show_psi);
    if (recognize->parsed())
      return cmd_recognize(model_paths, vocab_paths, sequence_text, p,
                           method_flag, eps, format);
    if (channel->parsed())
      return cmd_channel(word_text, channel_alphabet, channel_p, channel_seed,
                         channel_count);
    if (experiment->parsed()) {
      config.classifiers.clear();
      for (const auto& name : classifier_names) {
        auto method = method_from_name(name);
        if (!method) throw Error("unknown classifier '" + name + "'");
        config.classifiers.push_back(*method);
      }
      auto policy = draw_policy_from_name(draw_policy_flag);
      if (!policy) throw Error("unknown draw policy '" + draw_policy_flag + "'");
      config.draw_policy = *policy;
      config.include_timing = !no_timing;
      const ExperimentReport report = run_experiment(config);
      if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw Error("cannot write report to " + out_path);
        write_report_csv(report, out);
      }
      write_report_csv(report, std::cout);
      return 0;
    }
    if (oracle->parsed())
      return cmd_oracle(oracle_vocabs, oracle_p, oracle_budget, oracle_out);
    if (selftest->parsed())
      return run_selftest(std::cout, fault_inject) == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
