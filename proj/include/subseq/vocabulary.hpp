#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "subseq/error.hpp"

namespace subseq {

using SymbolIndex = std::uint32_t;

// Ordered finite alphabet. Symbols are opaque UTF-8 tokens; all downstream
// math works on their indices 0..size-1.
class Alphabet {
public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> symbols);
  Alphabet(std::initializer_list<std::string> symbols)
      : Alphabet(std::vector<std::string>(symbols)) {}

  // Convenience: one single-character symbol per character of `chars`.
  static Alphabet from_chars(std::string_view chars);

  std::size_t size() const { return symbols_.size(); }
  const std::string& symbol(SymbolIndex i) const { return symbols_[i]; }
  const std::vector<std::string>& symbols() const { return symbols_; }
  std::optional<SymbolIndex> index_of(std::string_view symbol) const;

  // True when every symbol is a single character, which allows words to be
  // written without separators.
  bool single_char() const { return single_char_; }

  bool operator==(const Alphabet& other) const {
    return symbols_ == other.symbols_;
  }

private:
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, SymbolIndex> index_;
  bool single_char_ = true;
};

// A word: non-empty sequence of alphabet indices.
class Word {
public:
  explicit Word(std::vector<SymbolIndex> letters);

  std::size_t length() const { return letters_.size(); }
  SymbolIndex at(std::size_t i) const { return letters_[i]; }
  const std::vector<SymbolIndex>& letters() const { return letters_; }

  bool operator==(const Word& other) const = default;
  bool operator<(const Word& other) const { return letters_ < other.letters_; }

private:
  std::vector<SymbolIndex> letters_;
};

// Channel output: like a word but may be empty (every symbol deleted).
class ObservedSequence {
public:
  ObservedSequence() = default;
  explicit ObservedSequence(std::vector<SymbolIndex> letters)
      : letters_(std::move(letters)) {}
  static ObservedSequence of(const Word& w) {
    return ObservedSequence(w.letters());
  }

  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  SymbolIndex at(std::size_t i) const { return letters_[i]; }
  const std::vector<SymbolIndex>& letters() const { return letters_; }

  bool operator==(const ObservedSequence& other) const = default;

private:
  std::vector<SymbolIndex> letters_;
};

// A finite, duplicate-free set of words over one alphabet, indexable by
// word length. Immutable once populated; safe to share across threads.
class Vocabulary {
public:
  Vocabulary(std::string label, Alphabet alphabet, double prior = 1.0);

  // Throws Error on duplicate words or letters outside the alphabet.
  void insert(Word w);

  const std::string& label() const { return label_; }
  const Alphabet& alphabet() const { return alphabet_; }
  double prior() const { return prior_; }
  void set_prior(double p) { prior_ = p; }

  std::size_t size() const { return order_.size(); }
  bool empty() const { return order_.empty(); }
  std::size_t max_len() const { return max_len_; }

  // Words of length n, in insertion order. Lengths with no words yield a
  // reference to a shared empty vector.
  const std::vector<Word>& by_length(std::size_t n) const;

  // Lengths that actually hold words, ascending.
  std::vector<std::size_t> lengths() const;

  // Flat access in insertion order (for uniform sampling).
  const Word& word(std::size_t flat_index) const;

  bool contains(const Word& w) const;

  bool operator==(const Vocabulary& other) const;

private:
  std::string label_;
  Alphabet alphabet_;
  double prior_ = 1.0;
  std::size_t max_len_ = 0;
  std::map<std::size_t, std::vector<Word>> by_length_;
  std::vector<std::pair<std::size_t, std::size_t>> order_;  // (length, slot)
};

// Parses one word from text against an alphabet: per-character when all
// symbols are single characters and the text has no spaces, otherwise
// whitespace-separated symbol tokens.
Word parse_word(std::string_view text, const Alphabet& alphabet);
ObservedSequence parse_sequence(std::string_view text, const Alphabet& alphabet);

std::string format_word(const Word& w, const Alphabet& alphabet);
std::string format_sequence(const ObservedSequence& s, const Alphabet& alphabet);

// Vocabulary text file:
//   - optional first line `#alphabet <sym> <sym> ...`
//   - optional `#label <name>` and `#prior <value>` directive lines
//   - other `#` lines are comments, blank lines are skipped
//   - every remaining line is one word
// When no alphabet is declared (neither in the file nor by the caller), the
// alphabet is the sorted set of symbols occurring in the file.
Vocabulary load_vocabulary(const std::filesystem::path& path,
                           const std::optional<Alphabet>& declared = {});
void save_vocabulary(const Vocabulary& v, const std::filesystem::path& path);

}  // namespace subseq
