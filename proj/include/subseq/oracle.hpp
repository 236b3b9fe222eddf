#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "subseq/recognition.hpp"
#include "subseq/vocabulary.hpp"

namespace subseq {

// Exact number of strictly increasing index maps embedding a sequence into
// a word. Bounded by C(|w|, |s|), which exceeds 64 bits for |w| > 67, so
// the value is held in two 64-bit limbs (words up to length 128).
class EmbeddingCount {
public:
  EmbeddingCount() = default;
  static EmbeddingCount from_u64(std::uint64_t v) {
    return EmbeddingCount(static_cast<unsigned __int128>(v));
  }

  bool is_zero() const { return value_ == 0; }
  bool fits_u64() const;
  std::uint64_t as_u64() const;  // throws OverflowError when it does not fit
  double as_double() const { return static_cast<double>(value_); }

  std::uint64_t high_limb() const {
    return static_cast<std::uint64_t>(value_ >> 64);
  }
  std::uint64_t low_limb() const { return static_cast<std::uint64_t>(value_); }

  bool operator==(const EmbeddingCount&) const = default;
  auto operator<=>(const EmbeddingCount&) const = default;

private:
  friend EmbeddingCount count_embeddings(const ObservedSequence&, const Word&);
  explicit EmbeddingCount(unsigned __int128 v) : value_(v) {}
  unsigned __int128 value_ = 0;
};

// Counts embeddings with the distinct-subsequence recurrence
//     D[i][j] = D[i][j-1] + [s_i == w_j] * D[i-1][j-1],  D[0][.] = 1
// in O(|s| * |w|) time. Words longer than 128 letters are rejected.
EmbeddingCount count_embeddings(const ObservedSequence& s, const Word& w);

// Probability of observing s when w crosses a deletion channel with
// deletion probability p: count * p^(n-m) * (1-p)^m.
double channel_likelihood(const ObservedSequence& s, const Word& w, double p);

// Exact discriminant: (prior / |V|) * sum_n p^n * sum_{w in V(n)} count(s, w),
// evaluated by full enumeration over the vocabulary. p = 0 selects
// exact-match mode (the n = |s| term with weight 1), mirroring total_score.
double map_discriminant(const Vocabulary& v, const ObservedSequence& s,
                        double p);

// Exact a-posteriori classification by full enumeration. Same draw rule as
// classify(); method tag exact-map.
Decision classify_map(std::span<const Vocabulary> vocabularies,
                      const ObservedSequence& s, double p,
                      double eps = kDefaultDrawTolerance);

struct ErrorAnalysisAssumptions {
  std::uint64_t vocab_size = 0;   // N, common to both vocabularies
  std::size_t word_len = 0;       // n, common to every word
  std::size_t alphabet_size = 0;
  double p = 0.0;
  std::uint64_t sequences_enumerated = 0;
  bool draws_scored_half = true;  // how algo_error treats tied scores
};

// Exact error analysis for two equiprobable, equal-size vocabularies whose
// words all share one length n. Enumerates every sequence of each length
// m = 0..n over the alphabet.
//
//   mu[m]        total over sequences of the smaller per-vocabulary
//                embedding mass: the intersection of the two length-m
//                subsequence multisets.
//   lambda[m]    embedding mass landing on the side the similarity scores
//                strictly lose; ties contribute to neither side.
//   tie_mass[m]  embedding mass (both vocabularies) on sequences whose
//                similarity scores tie exactly.
//   map_error    sum_m p^(n-m) (1-p)^m mu[m] / (2N); the exact-MAP error.
//   algo_error   same weighting over lambda[m] + tie_mass[m]/2: the exact
//                error of the similarity-score rule with draws scored as a
//                fair coin.
//   sqrt_bound   sum_m p^(n-m) (1-p)^m / N * sum_S sqrt(score1 * score2),
//                an upper bound on algo_error (weak: can exceed 1).
struct ErrorAnalysisReport {
  std::vector<std::uint64_t> mu;
  std::vector<std::uint64_t> lambda;
  std::vector<std::uint64_t> tie_mass;
  double map_error = 0.0;
  double algo_error = 0.0;
  double sqrt_bound = 0.0;
  ErrorAnalysisAssumptions assumptions;
};

ErrorAnalysisReport error_analysis(const Vocabulary& v1, const Vocabulary& v2,
                                   double p,
                                   std::uint64_t max_sequences = 4'000'000);

void write_error_report_csv(const ErrorAnalysisReport& report,
                            std::ostream& out);

}  // namespace subseq
