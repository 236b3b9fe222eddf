#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "subseq/learning.hpp"

namespace subseq {

enum class Method {
  subsequence_histogram,
  regular_histogram,
  exact_map,
};

std::string_view method_name(Method m);
std::optional<Method> method_from_name(std::string_view name);

// Per-model scoring audit trail. gamma[k] is the order-(m+k) similarity
// score for k = 0..L-m; total is the deletion-weighted aggregate used by
// the decision rule (log-domain for the regular-histogram method).
struct ScoreBreakdown {
  std::string label;
  std::size_t seq_len = 0;
  std::vector<double> gamma;
  double total = 0.0;
  std::uint64_t psi_lookups = 0;  // instrumentation: histogram entries read
};

// Classification outcome. A draw (no winner) is explicit: it means the top
// scores tie within the relative tolerance, never that a tie was broken
// arbitrarily.
struct Decision {
  std::optional<std::string> winner;
  Method method = Method::subsequence_histogram;
  std::vector<ScoreBreakdown> scores;

  bool draw() const { return !winner.has_value(); }
};

inline constexpr double kDefaultDrawTolerance = 1e-9;

// Order-n similarity score: the average over positions i of the number of
// m-length subsequences derivable from the model's length-n words that
// carry s[i] at position i. For an empty sequence the position average
// degenerates to the per-word count, i.e. the number of length-n words.
// Requires |s| <= n <= model.max_len().
double similarity_score(const RecognitionModel& model,
                        const ObservedSequence& s, std::size_t n);

// Deletion-weighted total score over candidate word lengths n = |s|..L:
//
//     total = (prior / vocab_size) * sum_n score_n * p^n
//
// p = 0 selects exact-match mode (only the n = |s| term, weight 1); p = 1
// is rejected; |s| > L yields an empty breakdown with total 0. Touches at
// most |s| * L histogram entries.
ScoreBreakdown total_score(const RecognitionModel& model,
                           const ObservedSequence& s, double p);

// Picks the model with the strictly largest total score, or Draw when the
// top two agree within relative tolerance eps. All models must share one
// alphabet.
Decision classify(std::span<const RecognitionModel> models,
                  const ObservedSequence& s, double p,
                  double eps = kDefaultDrawTolerance);

// Order-agnostic baseline: log-likelihood of per-symbol frequencies
// (total occurrences across all words over total letters), plus log prior.
// Equivalent to using only the order-1 subsequence data.
Decision classify_regular_histogram(std::span<const RecognitionModel> models,
                                    const ObservedSequence& s,
                                    double eps = kDefaultDrawTolerance);

// Shared argmax-or-draw rule over computed breakdowns.
Decision decide(std::vector<ScoreBreakdown> scores, Method method, double eps);

}  // namespace subseq
