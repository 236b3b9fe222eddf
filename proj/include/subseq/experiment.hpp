#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "subseq/generators.hpp"
#include "subseq/recognition.hpp"

namespace subseq {

// How a draw outcome contributes to the error rate.
enum class DrawPolicy {
  half,      // a draw costs 0.5 errors (fair coin)
  wrong,     // a draw counts as an error
  excluded,  // draws are removed from the denominator
};

std::string_view draw_policy_name(DrawPolicy p);
std::optional<DrawPolicy> draw_policy_from_name(std::string_view name);

struct ExperimentConfig {
  std::string scenario = "iid";  // iid | mirror | files
  std::vector<int> params = {0, 1, 2, 3, 4};  // deviations or mirror cases
  std::vector<double> deletion_probs = {0.1, 0.2, 0.3, 0.4};
  std::size_t words_per_vocab = 8000;
  std::size_t len_min = 20;
  std::size_t len_max = 40;
  std::size_t trials = 1000;
  std::vector<Method> classifiers = {Method::subsequence_histogram};
  DrawPolicy draw_policy = DrawPolicy::half;
  std::uint64_t master_seed = 1;
  std::uint64_t oracle_budget = 1000;  // max |V| for the exact-map method
  bool include_timing = true;          // false zeroes the seconds column
  std::vector<std::string> vocab_files;  // scenario "files"

  void validate() const;
};

// One (scenario, classifier, p, param) tally.
struct ExperimentCell {
  std::string scenario;
  Method classifier = Method::subsequence_histogram;
  double p = 0.0;
  int param = 0;
  std::uint64_t trials = 0;
  std::uint64_t wrong = 0;
  std::uint64_t draws = 0;
  double seconds = 0.0;
};

double cell_error_rate(const ExperimentCell& cell, DrawPolicy policy);
double cell_draw_rate(const ExperimentCell& cell);

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<ExperimentCell> cells;
};

// Runs the configured Monte Carlo study. Per trial: pick a vocabulary by
// prior, pick a word uniformly, push it through the deletion channel, and
// classify the output with every configured method. All randomness derives
// from the master seed through per-trial streams, so tallies are
// reproducible regardless of scheduling.
ExperimentReport run_experiment(const ExperimentConfig& config);

// CSV columns: scenario,classifier,p,param,trials,errors,draws,error_rate,
// draw_rate,seed,seconds. Config echo lines precede the header as comments.
void write_report_csv(const ExperimentReport& report, std::ostream& out);

}  // namespace subseq
