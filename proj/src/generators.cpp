#include "subseq/generators.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "subseq/combinatorics.hpp"
#include "subseq/rng.hpp"

namespace subseq {

std::vector<double> deviation_density(int deviation) {
  if (deviation < 0 || deviation > 4)
    throw Error("deviation parameter must lie in 0..4");
  const double i = deviation;
  return {0.25 - i / 50.0, 0.25 - i / 100.0, 0.25 + i / 100.0,
          0.25 + i / 50.0};
}

std::vector<double> reversed_density(const std::vector<double>& density) {
  return {density.rbegin(), density.rend()};
}

Vocabulary generate_all_combinations(std::string label,
                                     const Alphabet& alphabet,
                                     std::size_t word_len,
                                     std::uint64_t max_words, double prior) {
  if (word_len == 0) throw Error("word length must be positive");
  const std::size_t k = alphabet.size();
  std::uint64_t total = 1;
  for (std::size_t step = 0; step < word_len; ++step) {
    total = checked_mul(total, k);
    if (total > max_words)
      throw Error("all-combinations budget exceeded: |alphabet|^len > " +
                  std::to_string(max_words));
  }

  Vocabulary v(std::move(label), alphabet, prior);
  std::vector<SymbolIndex> digits(word_len, 0);
  while (true) {
    v.insert(Word(digits));
    std::size_t pos = word_len;
    while (pos-- > 0) {
      if (++digits[pos] < k) break;
      digits[pos] = 0;
      if (pos == 0) return v;
    }
  }
}

namespace {

struct DensitySampler {
  std::vector<double> cumulative;

  explicit DensitySampler(const std::vector<double>& density) {
    double sum = 0.0;
    for (double d : density) {
      if (d < 0.0) throw Error("density entries must be nonnegative");
      sum += d;
      cumulative.push_back(sum);
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw Error("density must sum to 1 (got " + std::to_string(sum) + ")");
  }

  SymbolIndex draw(SplitMix64& rng) const {
    const double u = rng.next_double();
    for (std::size_t k = 0; k < cumulative.size(); ++k)
      if (u < cumulative[k]) return static_cast<SymbolIndex>(k);
    return static_cast<SymbolIndex>(cumulative.size() - 1);
  }
};

struct LetterVectorHash {
  std::size_t operator()(const std::vector<SymbolIndex>& v) const {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (SymbolIndex s : v) {
      h ^= s;
      h *= 0x100000001B3ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

std::vector<SymbolIndex> draw_word_letters(const DensitySampler& sampler,
                                           std::size_t len_min,
                                           std::size_t len_max,
                                           SplitMix64& rng) {
  const std::size_t len =
      len_min + static_cast<std::size_t>(rng.next_below(len_max - len_min + 1));
  std::vector<SymbolIndex> letters(len);
  for (auto& letter : letters) letter = sampler.draw(rng);
  return letters;
}

// Shared draw-until-distinct loop; `transform` may reshape the candidate
// before the distinctness check.
template <typename Transform>
Vocabulary generate_distinct(std::string label, const Alphabet& alphabet,
                             const DensitySampler& sampler, std::size_t count,
                             std::size_t len_min, std::size_t len_max,
                             std::uint64_t seed, double prior,
                             Transform&& transform) {
  if (count == 0) throw Error("word count must be positive");
  if (len_min == 0 || len_min > len_max) throw Error("bad length range");

  Vocabulary v(std::move(label), alphabet, prior);
  std::unordered_set<std::vector<SymbolIndex>, LetterVectorHash> seen;
  SplitMix64 rng = derive_stream(seed, 0x766f6361);  // vocabulary stream
  const std::uint64_t budget = 20 * static_cast<std::uint64_t>(count) + 1000;
  std::uint64_t attempts = 0;
  while (seen.size() < count) {
    if (++attempts > budget)
      throw Error("could not draw " + std::to_string(count) +
                  " distinct words within the retry budget");
    auto letters = transform(draw_word_letters(sampler, len_min, len_max, rng));
    if (seen.insert(letters).second) v.insert(Word(std::move(letters)));
  }
  return v;
}

}  // namespace

Vocabulary generate_iid(std::string label, const Alphabet& alphabet,
                        const std::vector<double>& density, std::size_t count,
                        std::size_t len_min, std::size_t len_max,
                        std::uint64_t seed, double prior) {
  if (density.size() != alphabet.size())
    throw Error("density size must match alphabet size");
  DensitySampler sampler(density);
  return generate_distinct(std::move(label), alphabet, sampler, count, len_min,
                           len_max, seed, prior,
                           [](std::vector<SymbolIndex> w) { return w; });
}

Vocabulary mirror_vocabulary(const Vocabulary& v, std::string label) {
  Vocabulary out(std::move(label), v.alphabet(), v.prior());
  for (std::size_t k = 0; k < v.size(); ++k) {
    auto letters = v.word(k).letters();
    std::reverse(letters.begin(), letters.end());
    out.insert(Word(std::move(letters)));
  }
  return out;
}

std::pair<Vocabulary, Vocabulary> generate_mirror_pair(
    const Alphabet& alphabet, std::size_t count, std::size_t len_min,
    std::size_t len_max, int case_index, std::uint64_t seed) {
  if (case_index < 1 || case_index > 5)
    throw Error("mirror case index must lie in 1..5");
  const auto prefix_len = static_cast<std::size_t>(case_index - 1);
  if (prefix_len >= alphabet.size() + 1 || prefix_len > len_min)
    throw Error("mirror prefix longer than alphabet or words");

  std::vector<SymbolIndex> prefix(prefix_len);
  for (std::size_t k = 0; k < prefix_len; ++k)
    prefix[k] = static_cast<SymbolIndex>(k);

  const std::vector<double> uniform(alphabet.size(),
                                    1.0 / static_cast<double>(alphabet.size()));
  DensitySampler sampler(uniform);
  Vocabulary forward = generate_distinct(
      "theta1", alphabet, sampler, count, len_min, len_max, seed, 1.0,
      [&prefix](std::vector<SymbolIndex> w) {
        if (prefix.empty()) return w;
        // Prepend the prefix and drop as many letters from the end, so the
        // length is preserved.
        w.resize(w.size() - prefix.size());
        w.insert(w.begin(), prefix.begin(), prefix.end());
        return w;
      });
  Vocabulary mirrored = mirror_vocabulary(forward, "theta2");
  return {std::move(forward), std::move(mirrored)};
}

void GeneratorSpec::validate() const {
  switch (kind) {
    case Kind::explicit_list:
      if (vocab_path.empty()) throw Error("explicit-list spec needs a path");
      return;
    case Kind::all_combinations:
      if (alphabet_symbols.empty() || word_len == 0)
        throw Error("all-combinations spec needs an alphabet and a length");
      return;
    case Kind::iid_source:
      if (alphabet_symbols.empty() || density.size() != alphabet_symbols.size())
        throw Error("iid spec needs matching alphabet and density");
      if (count == 0 || len_min == 0 || len_min > len_max)
        throw Error("iid spec has a bad count or length range");
      return;
    case Kind::mirror_prefix:
      if (alphabet_symbols.empty() || case_index < 1 || case_index > 5)
        throw Error("mirror spec needs an alphabet and case in 1..5");
      return;
  }
  throw Error("unknown generator kind");
}

Vocabulary GeneratorSpec::generate() const {
  validate();
  switch (kind) {
    case Kind::explicit_list:
      return load_vocabulary(vocab_path);
    case Kind::all_combinations:
      return generate_all_combinations(label, Alphabet(alphabet_symbols),
                                       word_len);
    case Kind::iid_source:
      return generate_iid(label, Alphabet(alphabet_symbols), density, count,
                          len_min, len_max, seed);
    case Kind::mirror_prefix:
      return generate_mirror_pair(Alphabet(alphabet_symbols), count, len_min,
                                  len_max, case_index, seed)
          .first;
  }
  throw Error("unknown generator kind");
}

}  // namespace subseq
