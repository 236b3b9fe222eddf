#include "subseq/experiment.hpp"

#include <chrono>
#include <cstdio>
#include <ostream>

#include "subseq/channel.hpp"
#include "subseq/oracle.hpp"
#include "subseq/rng.hpp"

namespace subseq {

std::string_view draw_policy_name(DrawPolicy p) {
  switch (p) {
    case DrawPolicy::half: return "half";
    case DrawPolicy::wrong: return "wrong";
    case DrawPolicy::excluded: return "excluded";
  }
  return "?";
}

std::optional<DrawPolicy> draw_policy_from_name(std::string_view name) {
  if (name == "half") return DrawPolicy::half;
  if (name == "wrong") return DrawPolicy::wrong;
  if (name == "excluded") return DrawPolicy::excluded;
  return std::nullopt;
}

void ExperimentConfig::validate() const {
  if (scenario != "iid" && scenario != "mirror" && scenario != "files")
    throw Error("unknown scenario '" + scenario + "'");
  if (trials == 0) throw Error("trial count must be at least 1");
  if (params.empty()) throw Error("no scenario parameters configured");
  if (classifiers.empty()) throw Error("no classifiers configured");
  if (deletion_probs.empty()) throw Error("no deletion probabilities configured");
  for (double p : deletion_probs)
    if (p <= 0.0 || p >= 1.0)
      throw Error("deletion probabilities must lie in (0,1)");
  if (scenario == "iid") {
    for (int i : params)
      if (i < 0 || i > 4) throw Error("iid deviation must lie in 0..4");
  } else if (scenario == "mirror") {
    for (int c : params)
      if (c < 1 || c > 5) throw Error("mirror case must lie in 1..5");
  } else if (vocab_files.size() < 2) {
    throw Error("files scenario needs at least two vocabulary files");
  }
}

double cell_error_rate(const ExperimentCell& cell, DrawPolicy policy) {
  if (cell.trials == 0) return 0.0;
  const auto wrong = static_cast<double>(cell.wrong);
  const auto draws = static_cast<double>(cell.draws);
  const auto trials = static_cast<double>(cell.trials);
  switch (policy) {
    case DrawPolicy::half: return (wrong + 0.5 * draws) / trials;
    case DrawPolicy::wrong: return (wrong + draws) / trials;
    case DrawPolicy::excluded: {
      const double kept = trials - draws;
      return kept <= 0.0 ? 0.0 : wrong / kept;
    }
  }
  return 0.0;
}

double cell_draw_rate(const ExperimentCell& cell) {
  if (cell.trials == 0) return 0.0;
  return static_cast<double>(cell.draws) / static_cast<double>(cell.trials);
}

namespace {

std::vector<Vocabulary> build_vocabularies(const ExperimentConfig& config,
                                           int param) {
  std::vector<Vocabulary> vocabularies;
  if (config.scenario == "iid") {
    const Alphabet acgt = Alphabet::from_chars("acgt");
    const auto density = deviation_density(param);
    const std::uint64_t seed1 =
        mix64(config.master_seed ^ (0x1001 + 2 * static_cast<std::uint64_t>(param)));
    const std::uint64_t seed2 =
        mix64(config.master_seed ^ (0x1002 + 2 * static_cast<std::uint64_t>(param)));
    vocabularies.push_back(generate_iid("theta1", acgt, density,
                                        config.words_per_vocab, config.len_min,
                                        config.len_max, seed1));
    vocabularies.push_back(generate_iid("theta2", acgt,
                                        reversed_density(density),
                                        config.words_per_vocab, config.len_min,
                                        config.len_max, seed2));
  } else if (config.scenario == "mirror") {
    const Alphabet acgt = Alphabet::from_chars("acgt");
    const std::uint64_t seed =
        mix64(config.master_seed ^ (0x2000 + static_cast<std::uint64_t>(param)));
    auto [forward, mirrored] =
        generate_mirror_pair(acgt, config.words_per_vocab, config.len_min,
                             config.len_max, param, seed);
    vocabularies.push_back(std::move(forward));
    vocabularies.push_back(std::move(mirrored));
  } else {
    for (const auto& path : config.vocab_files)
      vocabularies.push_back(load_vocabulary(path));
    for (std::size_t k = 1; k < vocabularies.size(); ++k)
      if (!(vocabularies[k].alphabet() == vocabularies[0].alphabet()))
        throw Error("vocabulary files have mismatched alphabets");
  }
  const double prior = 1.0 / static_cast<double>(vocabularies.size());
  for (auto& v : vocabularies) v.set_prior(prior);
  return vocabularies;
}

Decision classify_with(Method method,
                       std::span<const RecognitionModel> models,
                       std::span<const Vocabulary> vocabularies,
                       const ObservedSequence& s, double p) {
  switch (method) {
    case Method::subsequence_histogram: return classify(models, s, p);
    case Method::regular_histogram: return classify_regular_histogram(models, s);
    case Method::exact_map: return classify_map(vocabularies, s, p);
  }
  throw Error("unknown classifier method");
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& config) {
  config.validate();

  ExperimentReport report;
  report.config = config;

  for (std::size_t param_idx = 0; param_idx < config.params.size();
       ++param_idx) {
    const int param = config.params[param_idx];
    const auto vocabularies = build_vocabularies(config, param);

    for (Method method : config.classifiers)
      if (method == Method::exact_map)
        for (const auto& v : vocabularies)
          if (v.size() > config.oracle_budget)
            throw Error("oracle budget exceeded: |" + v.label() + "| = " +
                        std::to_string(v.size()) + " words > " +
                        std::to_string(config.oracle_budget));

    std::vector<RecognitionModel> models;
    models.reserve(vocabularies.size());
    for (const auto& v : vocabularies) models.push_back(learn_model(v));

    for (std::size_t p_idx = 0; p_idx < config.deletion_probs.size(); ++p_idx) {
      const double p = config.deletion_probs[p_idx];
      std::vector<ExperimentCell> cells(config.classifiers.size());
      for (std::size_t c = 0; c < cells.size(); ++c) {
        cells[c].scenario = config.scenario;
        cells[c].classifier = config.classifiers[c];
        cells[c].p = p;
        cells[c].param = param;
        cells[c].trials = config.trials;
      }

      const std::uint64_t cell_key =
          mix64(mix64(config.master_seed ^ (param_idx * 0x9E37 + 1)) ^
                (p_idx * 0x79B9 + 1));

      const auto start = std::chrono::steady_clock::now();
      for (std::uint64_t trial = 0; trial < config.trials; ++trial) {
        SplitMix64 rng = derive_stream(config.master_seed, cell_key, trial);
        const std::size_t source =
            static_cast<std::size_t>(rng.next_below(vocabularies.size()));
        const Vocabulary& vocab = vocabularies[source];
        const Word& word = vocab.word(
            static_cast<std::size_t>(rng.next_below(vocab.size())));
        const ObservedSequence s = apply_deletions(word, p, rng);

        for (std::size_t c = 0; c < config.classifiers.size(); ++c) {
          const Decision d = classify_with(config.classifiers[c], models,
                                           vocabularies, s, p);
          if (d.draw())
            ++cells[c].draws;
          else if (*d.winner != vocab.label())
            ++cells[c].wrong;
        }
      }
      const auto elapsed = std::chrono::steady_clock::now() - start;
      const double seconds =
          std::chrono::duration<double>(elapsed).count();
      for (auto& cell : cells) {
        cell.seconds = config.include_timing ? seconds : 0.0;
        report.cells.push_back(std::move(cell));
      }
    }
  }
  return report;
}

void write_report_csv(const ExperimentReport& report, std::ostream& out) {
  const auto& c = report.config;
  out << "# scenario=" << c.scenario;
  out << " params=";
  for (std::size_t k = 0; k < c.params.size(); ++k)
    out << (k ? "," : "") << c.params[k];
  out << " trials=" << c.trials << " words=" << c.words_per_vocab
      << " lengths=" << c.len_min << ".." << c.len_max
      << " draw_policy=" << draw_policy_name(c.draw_policy)
      << " seed=" << c.master_seed << '\n';
  out << "# classifiers=";
  for (std::size_t k = 0; k < c.classifiers.size(); ++k)
    out << (k ? "," : "") << method_name(c.classifiers[k]);
  out << '\n';
  out << "scenario,classifier,p,param,trials,errors,draws,error_rate,"
         "draw_rate,seed,seconds\n";
  char buf[64];
  for (const auto& cell : report.cells) {
    out << cell.scenario << ',' << method_name(cell.classifier) << ',';
    std::snprintf(buf, sizeof(buf), "%.6g", cell.p);
    out << buf << ',' << cell.param << ',' << cell.trials << ',' << cell.wrong
        << ',' << cell.draws << ',';
    std::snprintf(buf, sizeof(buf), "%.6f",
                  cell_error_rate(cell, c.draw_policy));
    out << buf << ',';
    std::snprintf(buf, sizeof(buf), "%.6f", cell_draw_rate(cell));
    out << buf << ',' << c.master_seed << ',';
    std::snprintf(buf, sizeof(buf), "%.3f", cell.seconds);
    out << buf << '\n';
  }
}

}  // namespace subseq
