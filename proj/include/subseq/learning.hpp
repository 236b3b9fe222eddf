#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "subseq/combinatorics.hpp"
#include "subseq/matrix.hpp"
#include "subseq/vocabulary.hpp"

namespace subseq {

// Per word-length n, the |alphabet| x n matrix counting how many length-n
// words carry symbol sigma at position j. Lengths with no words store no
// matrix and read as zero.
struct PositionalHistogram {
  std::size_t alphabet_size = 0;
  std::map<std::size_t, CountMatrix> by_len;

  // Zero-based position j.
  std::uint64_t count(std::size_t n, SymbolIndex sigma, std::size_t j) const {
    auto it = by_len.find(n);
    return it == by_len.end() ? 0 : it->second.at(sigma, j);
  }

  // Number of words of length n: any column of the length-n matrix sums
  // to it; column 0 is used.
  std::uint64_t words_of_length(std::size_t n) const;
};

// Per (n, m) with m <= n, the |alphabet| x m matrix counting, over the
// multiset of all m-length subsequences extracted from the length-n words,
// how many carry symbol sigma at position i. Derived from the positional
// histogram via the placement counts:
//
//     psi[n,m](sigma, i) = sum_j phi[n](sigma, j) * alpha(n,m,j,i)
struct SubsequenceHistogram {
  std::size_t alphabet_size = 0;
  std::map<std::size_t, std::vector<CountMatrix>> by_len;  // [n][m-1]

  const CountMatrix* matrix(std::size_t n, std::size_t m) const {
    auto it = by_len.find(n);
    if (it == by_len.end() || m == 0 || m > it->second.size()) return nullptr;
    return &it->second[m - 1];
  }

  // Zero-based position i.
  std::uint64_t count(std::size_t n, std::size_t m, SymbolIndex sigma,
                      std::size_t i) const {
    const CountMatrix* mat = matrix(n, m);
    return mat ? mat->at(sigma, i) : 0;
  }

  std::size_t entry_count() const;
};

PositionalHistogram learn_positional(const Vocabulary& v);
SubsequenceHistogram learn_subsequence(const PositionalHistogram& phi,
                                       const AlphaTable& alpha);

inline constexpr int kModelFormatVersion = 1;

// Everything the recognizer needs about one vocabulary: alphabet, prior,
// size, and the two histogram families. The word list itself is not kept.
struct RecognitionModel {
  int format_version = kModelFormatVersion;
  std::string label;
  Alphabet alphabet;
  double prior = 1.0;
  std::uint64_t vocab_size = 0;
  PositionalHistogram phi;
  SubsequenceHistogram psi;

  // Lengths whose psi matrices are stale after add_word(). Queries on a
  // model with pending lengths throw; call finalize() first.
  std::set<std::size_t> pending;

  std::size_t max_len() const {
    return phi.by_len.empty() ? 0 : phi.by_len.rbegin()->first;
  }
  std::uint64_t words_of_length(std::size_t n) const {
    return phi.words_of_length(n);
  }
  bool finalized() const { return pending.empty(); }
  void require_finalized() const;

  // Adds one word's counts to phi and defers the psi refresh, so repeated
  // adds of the same length cost one recomputation at the next finalize().
  // The caller guarantees the word was not counted before.
  void add_word(const Word& w);
  void finalize();
  void finalize(const AlphaTable& alpha);

  // Total stored count entries across both histogram families.
  std::size_t count_entries() const;

  // FNV-1a over a canonical rendering of alphabet, size and all counts.
  std::string checksum() const;
};

RecognitionModel learn_model(const Vocabulary& v);

// Model file: versioned JSON with integer counts only (doubles appear only
// for the prior), so counts round-trip bit-exactly.
void save_model(const RecognitionModel& model,
                const std::filesystem::path& path);

enum class LoadMode {
  fast,    // structural validation + checksum
  strict,  // additionally re-derives psi from phi and compares
};
RecognitionModel load_model(const std::filesystem::path& path,
                            LoadMode mode = LoadMode::fast);

}  // namespace subseq
