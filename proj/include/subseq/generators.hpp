#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "subseq/vocabulary.hpp"

namespace subseq {

// Densities for the two drifting i.i.d. sources used by the iid experiment
// scenario: source 1 gets [1/4 - i/50, 1/4 - i/100, 1/4 + i/100, 1/4 + i/50]
// over a 4-symbol alphabet; source 2 uses the reverse. deviation in 0..4.
std::vector<double> deviation_density(int deviation);
std::vector<double> reversed_density(const std::vector<double>& density);

// Every word of the given length over the alphabet. Errors when the count
// |alphabet|^len would exceed max_words.
Vocabulary generate_all_combinations(std::string label,
                                     const Alphabet& alphabet,
                                     std::size_t word_len,
                                     std::uint64_t max_words = 1u << 20,
                                     double prior = 1.0);

// `count` distinct words with lengths uniform on [len_min, len_max] and
// letters i.i.d. from `density` (must sum to 1 within 1e-12). Colliding
// draws are retried; errors if the retry budget is exhausted.
Vocabulary generate_iid(std::string label, const Alphabet& alphabet,
                        const std::vector<double>& density, std::size_t count,
                        std::size_t len_min, std::size_t len_max,
                        std::uint64_t seed, double prior = 1.0);

// Reverses every word.
Vocabulary mirror_vocabulary(const Vocabulary& v, std::string label);

// A structured vocabulary and its horizontal mirror. Case 1 draws words
// uniformly i.i.d. over the alphabet; cases 2..5 prepend the first
// (case_index - 1) alphabet symbols as a fixed prefix and truncate the same
// number of letters from the end, preserving each word's length. The second
// vocabulary reverses every word of the first.
std::pair<Vocabulary, Vocabulary> generate_mirror_pair(
    const Alphabet& alphabet, std::size_t count, std::size_t len_min,
    std::size_t len_max, int case_index, std::uint64_t seed);

// One serializable generator description, as used by experiment configs.
struct GeneratorSpec {
  enum class Kind { explicit_list, all_combinations, iid_source, mirror_prefix };

  Kind kind = Kind::iid_source;
  std::string label;
  std::vector<std::string> alphabet_symbols;
  std::string vocab_path;            // explicit_list
  std::size_t word_len = 0;          // all_combinations
  std::vector<double> density;       // iid_source
  std::size_t count = 8000;
  std::size_t len_min = 20;
  std::size_t len_max = 40;
  int case_index = 1;                // mirror_prefix
  std::uint64_t seed = 0;

  void validate() const;
  Vocabulary generate() const;  // mirror_prefix yields the forward vocabulary
};

}  // namespace subseq
