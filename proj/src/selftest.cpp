#include "subseq/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "subseq/combinatorics.hpp"
#include "subseq/oracle.hpp"
#include "subseq/recognition.hpp"
#include "subseq/rng.hpp"

namespace subseq {

namespace {

// Built-in fixture: two binary vocabularies that are mirrors of each other.
Vocabulary fixture_vocabulary(bool second) {
  Vocabulary v(second ? "theta2" : "theta1", Alphabet::from_chars("01"), 0.5);
  const char* words1[] = {"0101", "1100"};
  const char* words2[] = {"1010", "0011"};
  for (const char* text : (second ? words2 : words1))
    v.insert(parse_word(text, v.alphabet()));
  return v;
}

bool matrix_equals(const CountMatrix* mat,
                   const std::vector<std::vector<std::uint64_t>>& expected) {
  if (!mat || mat->rows() != expected.size()) return false;
  for (std::size_t r = 0; r < expected.size(); ++r) {
    if (mat->cols() != expected[r].size()) return false;
    for (std::size_t c = 0; c < expected[r].size(); ++c)
      if (mat->at(r, c) != expected[r][c]) return false;
  }
  return true;
}

// Exhaustive embedding count: tries every increasing index subset.
std::uint64_t brute_embeddings(const ObservedSequence& s, const Word& w) {
  const std::size_t m = s.length();
  const std::size_t n = w.length();
  if (m > n) return 0;
  if (m == 0) return 1;
  std::vector<std::size_t> pick(m);
  std::uint64_t total = 0;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t slot,
                                                          std::size_t from) {
    if (slot == m) {
      ++total;
      return;
    }
    for (std::size_t j = from; j + (m - slot) <= n; ++j) {
      if (w.at(j) == s.at(slot)) {
        pick[slot] = j;
        rec(slot + 1, j + 1);
      }
    }
  };
  rec(0, 0);
  return total;
}

Word random_word(SplitMix64& rng, std::size_t len, std::size_t k) {
  std::vector<SymbolIndex> letters(len);
  for (auto& l : letters)
    l = static_cast<SymbolIndex>(rng.next_below(k));
  return Word(std::move(letters));
}

}  // namespace

int run_selftest(std::ostream& out, bool corrupt_alpha) {
  int failures = 0;
  auto check = [&](const std::string& name, bool ok) {
    out << (ok ? "ok   " : "FAIL ") << name << '\n';
    if (!ok) ++failures;
  };

  // Binomial fixtures.
  check("binomial basics",
        binomial(4, 2) == 6 && binomial(7, 0) == 1 && binomial(3, 5) == 0 &&
            binomial(40, 20) == 137846528820ULL);

  // Placement-count identity over a full triangle, optionally corrupted.
  {
    AlphaTable table(20);
    if (corrupt_alpha) table.corrupt_entry_for_selftest(7, 3);
    bool ok = true;
    for (std::size_t n = 1; n <= 20 && ok; ++n)
      for (std::size_t m = 1; m <= n && ok; ++m)
        ok = verify_alpha_identity(table, n, m);
    check("placement-count identity (n <= 20)", ok);
  }

  // Learned histograms for the fixture vocabularies.
  const Vocabulary v1 = fixture_vocabulary(false);
  const Vocabulary v2 = fixture_vocabulary(true);
  const RecognitionModel m1 = learn_model(v1);
  const RecognitionModel m2 = learn_model(v2);

  check("fixture positional histograms",
        matrix_equals(&m1.phi.by_len.at(4), {{1, 0, 2, 1}, {1, 2, 0, 1}}) &&
            matrix_equals(&m2.phi.by_len.at(4), {{1, 2, 0, 1}, {1, 0, 2, 1}}));

  check("fixture subsequence histograms",
        matrix_equals(m1.psi.matrix(4, 1), {{4}, {4}}) &&
            matrix_equals(m1.psi.matrix(4, 2), {{5, 7}, {7, 5}}) &&
            matrix_equals(m1.psi.matrix(4, 3), {{3, 4, 5}, {5, 4, 3}}) &&
            matrix_equals(m1.psi.matrix(4, 4), {{1, 0, 2, 1}, {1, 2, 0, 1}}) &&
            matrix_equals(m2.psi.matrix(4, 2), {{7, 5}, {5, 7}}));

  // Column sums: every psi column must total |V(n)| * C(n,m).
  {
    bool ok = true;
    AlphaTable table(8);
    SplitMix64 rng(0xC01);
    Vocabulary v("random", Alphabet::from_chars("abc"));
    while (v.size() < 12) {
      Word w = random_word(rng, 2 + rng.next_below(6), 3);
      if (!v.contains(w)) v.insert(std::move(w));
    }
    const RecognitionModel model = learn_model(v);
    for (std::size_t n : v.lengths()) {
      const std::uint64_t words = model.words_of_length(n);
      for (std::size_t m = 1; m <= n; ++m) {
        const CountMatrix* mat = model.psi.matrix(n, m);
        for (std::size_t i = 0; i < m; ++i) {
          std::uint64_t sum = 0;
          for (std::size_t sigma = 0; sigma < mat->rows(); ++sigma)
            sum += mat->at(sigma, i);
          ok = ok && sum == checked_mul(words, table.binomial(n, m));
        }
      }
    }
    check("subsequence histogram column sums", ok);
  }

  // Dynamic program versus exhaustive enumeration.
  {
    bool ok = true;
    SplitMix64 rng(0xD9);
    for (int round = 0; round < 60 && ok; ++round) {
      const Word w = random_word(rng, 1 + rng.next_below(8), 2);
      std::vector<SymbolIndex> letters(rng.next_below(6));
      for (auto& l : letters) l = static_cast<SymbolIndex>(rng.next_below(2));
      const ObservedSequence s(std::move(letters));
      ok = count_embeddings(s, w).as_u64() == brute_embeddings(s, w);
    }
    check("embedding count matches enumeration", ok);
  }

  // Channel-likelihood normalization over all distinct subsequences.
  {
    bool ok = true;
    SplitMix64 rng(0xE4);
    for (double p : {0.25, 0.5, 0.8}) {
      const Word w = random_word(rng, 10, 2);
      std::vector<std::vector<SymbolIndex>> distinct;
      for (std::uint64_t mask = 0; mask < (1u << 10); ++mask) {
        std::vector<SymbolIndex> s;
        for (std::size_t j = 0; j < 10; ++j)
          if (mask & (1u << j)) s.push_back(w.at(j));
        distinct.push_back(std::move(s));
      }
      std::sort(distinct.begin(), distinct.end());
      distinct.erase(std::unique(distinct.begin(), distinct.end()),
                     distinct.end());
      double total = 0.0;
      for (const auto& s : distinct)
        total += channel_likelihood(ObservedSequence(s), w, p);
      ok = ok && std::abs(total - 1.0) < 1e-12;
    }
    check("channel likelihood normalization", ok);
  }

  // Fixture decision table, both the approximation and the exact rule.
  {
    const std::vector<RecognitionModel> models = {m1, m2};
    const std::vector<Vocabulary> vocabularies = {v1, v2};
    const std::vector<std::pair<const char*, const char*>> expected = {
        {"0", nullptr},   {"1", nullptr},   {"00", nullptr}, {"11", nullptr},
        {"01", "theta2"}, {"10", "theta1"}, {"100", "theta1"},
        {"110", "theta1"}, {"001", "theta2"}, {"011", "theta2"},
        {"010", nullptr}, {"101", nullptr}, {"0101", "theta1"},
        {"1100", "theta1"}, {"1010", "theta2"}, {"0011", "theta2"},
    };
    bool ok = true;
    for (const auto& [text, want] : expected) {
      const ObservedSequence s = parse_sequence(text, v1.alphabet());
      const Decision approx = classify(models, s, 0.3);
      const Decision exact = classify_map(vocabularies, s, 0.3);
      const bool want_draw = want == nullptr;
      ok = ok && approx.draw() == want_draw && exact.draw() == want_draw;
      if (!want_draw)
        ok = ok && *approx.winner == want && *exact.winner == want;
    }
    check("fixture decision table (approximation == exact)", ok);
  }

  out << (failures == 0 ? "selftest: all checks passed\n"
                        : "selftest: FAILURES present\n");
  return failures;
}

}  // namespace subseq
