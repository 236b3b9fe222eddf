#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <set>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "subseq/generators.hpp"
#include "subseq/oracle.hpp"

using namespace subseq;
using namespace subseq::testing;

namespace {

const Alphabet kBinary = Alphabet::from_chars("01");

ObservedSequence seq(const char* text) {
  return parse_sequence(text, kBinary);
}
Word word(const char* text) { return parse_word(text, kBinary); }

// All distinct subsequences of a word, by position subsets.
std::set<std::vector<SymbolIndex>> distinct_subsequences(const Word& w) {
  std::set<std::vector<SymbolIndex>> out;
  const std::size_t n = w.length();
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    std::vector<SymbolIndex> s;
    for (std::size_t j = 0; j < n; ++j)
      if (mask & (1ULL << j)) s.push_back(w.at(j));
    out.insert(std::move(s));
  }
  return out;
}

}  // namespace

TEST_CASE("embedding counts on pinned pairs") {
  CHECK(count_embeddings(seq("01"), word("0101")).as_u64() == 3);
  CHECK(count_embeddings(seq("01"), word("1100")).as_u64() == 0);
  CHECK(count_embeddings(seq("10"), word("1100")).as_u64() == 4);
  CHECK(count_embeddings(ObservedSequence{}, word("0101")).as_u64() == 1);
  CHECK(count_embeddings(seq("0101"), word("0101")).as_u64() == 1);
  CHECK(count_embeddings(seq("01011"), word("0101")).as_u64() == 0);
}

TEST_CASE("embedding counts match enumeration on random pairs") {
  SplitMix64 rng(61);
  for (int round = 0; round < 600; ++round) {
    const std::size_t k = 2 + rng.next_below(2);
    const Word w = random_word(rng, 1 + rng.next_below(10), k);
    const ObservedSequence s =
        random_sequence(rng, rng.next_below(w.length() + 2), k);
    CHECK(count_embeddings(s, w).as_u64() == brute_embeddings(s, w));
  }
}

TEST_CASE("per-length embedding totals equal the binomial coefficient") {
  SplitMix64 rng(67);
  for (int round = 0; round < 10; ++round) {
    const std::size_t n = 4 + rng.next_below(9);  // up to 12
    const Word w = random_word(rng, n, 2);
    std::vector<std::uint64_t> per_len(n + 1, 0);
    for (const auto& s : distinct_subsequences(w))
      per_len[s.size()] +=
          count_embeddings(ObservedSequence(s), w).as_u64();
    for (std::size_t m = 0; m <= n; ++m)
      CHECK(per_len[m] == pascal_binomial(n, m));
  }
}

TEST_CASE("channel likelihoods normalize over distinct subsequences") {
  SplitMix64 rng(71);
  for (double p : {0.0, 0.15, 0.5, 0.85, 1.0}) {
    const std::size_t n = 12;
    const Word w = random_word(rng, n, 2);
    double total = 0.0;
    for (const auto& s : distinct_subsequences(w))
      total += channel_likelihood(ObservedSequence(s), w, p);
    CHECK(std::abs(total - 1.0) < 1e-12);
  }
}

TEST_CASE("channel likelihood closed forms") {
  const Word w = word("0101");
  for (double p : {0.2, 0.6}) {
    const double q = 1.0 - p;
    CHECK(channel_likelihood(seq("01"), w, p) ==
          doctest::Approx(3.0 * p * p * q * q).epsilon(1e-12));
    CHECK(channel_likelihood(ObservedSequence::of(w), w, p) ==
          doctest::Approx(q * q * q * q).epsilon(1e-12));
  }
  CHECK(channel_likelihood(seq("01"), w, 0.0) == 0.0);
  CHECK(channel_likelihood(ObservedSequence::of(w), w, 0.0) == 1.0);
}

TEST_CASE("map discriminant reproduces the fixture likelihood ratio") {
  const Vocabulary v1 = fixture_theta1();
  const Vocabulary v2 = fixture_theta2();
  for (double p : {0.1, 0.3, 0.8}) {
    const double j1 = map_discriminant(v1, seq("01"), p);
    const double j2 = map_discriminant(v2, seq("01"), p);
    // Embedding masses 3 versus 5; the common factor cancels in the ratio.
    CHECK(j1 / j2 == doctest::Approx(3.0 / 5.0).epsilon(1e-12));
    CHECK(j2 > j1);
  }
}

TEST_CASE("map discriminant on the empty sequence counts every word once") {
  Vocabulary v("v", kBinary, 0.5);
  v.insert(word("01"));
  v.insert(word("0101"));
  v.insert(word("1101"));
  const double p = 0.3;
  const double expected =
      (0.5 / 3.0) * (std::pow(p, 2) * 1 + std::pow(p, 4) * 2);
  CHECK(map_discriminant(v, ObservedSequence{}, p) ==
        doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("exact classification agrees with the fixture decision table") {
  const std::vector<Vocabulary> vocabularies = {fixture_theta1(),
                                                fixture_theta2()};
  for (double p : {0.1, 0.3, 0.7}) {
    for (const auto& expected : kFixtureDecisions) {
      const Decision d = classify_map(vocabularies, seq(expected.sequence), p);
      INFO("sequence ", expected.sequence);
      CHECK(d.method == Method::exact_map);
      if (expected.winner == nullptr) {
        CHECK(d.draw());
      } else {
        REQUIRE(!d.draw());
        CHECK(*d.winner == expected.winner);
      }
    }
  }
}

TEST_CASE("degenerate exact classification") {
  const std::vector<Vocabulary> single = {fixture_theta1()};
  const Decision d = classify_map(single, seq("01"), 0.3);
  REQUIRE(!d.draw());
  CHECK(*d.winner == "theta1");

  Vocabulary copy1 = fixture_theta1();
  Vocabulary copy2 = fixture_theta1();
  const std::vector<Vocabulary> identical = {copy1, copy2};
  SplitMix64 rng(73);
  for (int round = 0; round < 20; ++round) {
    const ObservedSequence s = random_sequence(rng, rng.next_below(5), 2);
    CHECK(classify_map(identical, s, 0.3).draw());
  }
}

TEST_CASE("error analysis on the fixture pair") {
  const Vocabulary v1 = fixture_theta1();
  const Vocabulary v2 = fixture_theta2();
  const ErrorAnalysisReport report = error_analysis(v1, v2, 0.3);

  // Frozen from exhaustive enumeration over {0,1}^m.
  CHECK(report.mu == std::vector<std::uint64_t>{2, 8, 10, 6, 0});
  CHECK(report.lambda == std::vector<std::uint64_t>{0, 0, 6, 4, 0});
  CHECK(report.tie_mass == std::vector<std::uint64_t>{4, 16, 8, 4, 0});

  // p = 0.3: sum of (1/4) 0.3^(4-m) 0.7^m mu(m).
  CHECK(report.map_error == doctest::Approx(0.30645).epsilon(1e-12));
  // The decisions coincide with the exact rule, so the two errors agree.
  CHECK(report.algo_error == doctest::Approx(report.map_error).epsilon(1e-12));
  CHECK(report.map_error <= report.algo_error + 1e-15);
  CHECK(report.algo_error <= report.sqrt_bound);
  CHECK(report.assumptions.vocab_size == 2);
  CHECK(report.assumptions.word_len == 4);
}

TEST_CASE("identical vocabularies reach the maximal error of one half") {
  Vocabulary v1 = fixture_theta1();
  Vocabulary v2 = fixture_theta1();
  const ErrorAnalysisReport report = error_analysis(v1, v2, 0.25);
  CHECK(report.map_error == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(report.algo_error == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(report.lambda == std::vector<std::uint64_t>(5, 0));
}

TEST_CASE("disjoint-support vocabularies have empty intersections") {
  const Alphabet a = Alphabet::from_chars("abcd");
  Vocabulary v1("v1", a, 0.5);
  v1.insert(parse_word("aab", a));
  v1.insert(parse_word("bba", a));
  Vocabulary v2("v2", a, 0.5);
  v2.insert(parse_word("ccd", a));
  v2.insert(parse_word("ddc", a));
  const ErrorAnalysisReport report = error_analysis(v1, v2, 0.4);
  for (std::size_t m = 1; m < report.mu.size(); ++m) CHECK(report.mu[m] == 0);
  CHECK(report.mu[0] == 2);  // the empty sequence is always shared
}

TEST_CASE("bound chain holds on random equal-shape vocabularies") {
  SplitMix64 rng(79);
  for (int round = 0; round < 15; ++round) {
    const std::size_t n = 3 + rng.next_below(4);
    const std::size_t count = 2 + rng.next_below(6);
    Vocabulary v1("v1", kBinary, 0.5);
    Vocabulary v2("v2", kBinary, 0.5);
    std::size_t guard = 0;
    while (v1.size() < count && ++guard < 10000) {
      Word w = random_word(rng, n, 2);
      if (!v1.contains(w)) v1.insert(std::move(w));
    }
    while (v2.size() < count && ++guard < 20000) {
      Word w = random_word(rng, n, 2);
      if (!v2.contains(w)) v2.insert(std::move(w));
    }
    const double p = 0.1 + 0.15 * static_cast<double>(rng.next_below(5));
    const ErrorAnalysisReport report = error_analysis(v1, v2, p);
    CHECK(report.map_error >= 0.0);
    CHECK(report.map_error <= 0.5 + 1e-12);
    CHECK(report.algo_error >= report.map_error - 1e-12);
    CHECK(report.sqrt_bound >= report.algo_error - 1e-12);
    CHECK(report.algo_error <= 1.0 + 1e-12);
  }
}

TEST_CASE("error analysis rejects malformed setups") {
  Vocabulary v1 = fixture_theta1();
  Vocabulary v2 = fixture_theta2();

  SUBCASE("unequal priors") {
    v2.set_prior(0.7);
    CHECK_THROWS_AS(error_analysis(v1, v2, 0.3), Error);
  }
  SUBCASE("unequal sizes") {
    v2.insert(word("0110"));
    CHECK_THROWS_AS(error_analysis(v1, v2, 0.3), Error);
  }
  SUBCASE("mixed lengths") {
    Vocabulary mixed("m", kBinary, 0.5);
    mixed.insert(word("01"));
    mixed.insert(word("010"));
    Vocabulary other("o", kBinary, 0.5);
    other.insert(word("10"));
    other.insert(word("101"));
    CHECK_THROWS_AS(error_analysis(mixed, other, 0.3), Error);
  }
  SUBCASE("budget exceeded") {
    CHECK_THROWS_AS(error_analysis(v1, v2, 0.3, 10), Error);
  }
}

TEST_CASE("report serializes to csv") {
  const ErrorAnalysisReport report =
      error_analysis(fixture_theta1(), fixture_theta2(), 0.3);
  std::ostringstream out;
  write_error_report_csv(report, out);
  const std::string text = out.str();
  CHECK(text.find("quantity,m,value") != std::string::npos);
  CHECK(text.find("mu,2,10") != std::string::npos);
  CHECK(text.find("map_error,,0.30645") != std::string::npos);
}

TEST_CASE("all-combinations discriminants use the exact threshold form") {
  // For vocabulary k = all length-L_k words over its sub-alphabet, the
  // exact discriminant on a shared-symbol sequence is
  //   prior * C(L_k, m) * p^L_k / |sub-alphabet k|^m.
  const Alphabet full({"0", "1", "2"});
  Vocabulary v1("v1", full, 0.5);
  {
    const Vocabulary sub = generate_all_combinations("x", full, 4);
    for (std::size_t k = 0; k < sub.size(); ++k) v1.insert(sub.word(k));
  }
  Vocabulary v2("v2", full, 0.5);
  {
    const Vocabulary sub =
        generate_all_combinations("x", Alphabet::from_chars("01"), 5);
    for (std::size_t k = 0; k < sub.size(); ++k) v2.insert(sub.word(k));
  }
  for (double p : {0.2, 0.6}) {
    for (std::size_t m = 0; m <= 3; ++m) {
      SplitMix64 rng(89 + m);
      const ObservedSequence s = random_sequence(rng, m, 2);
      const double j1 = map_discriminant(v1, s, p);
      const double j2 = map_discriminant(v2, s, p);
      const double want1 = 0.5 * static_cast<double>(pascal_binomial(4, m)) *
                           std::pow(p, 4.0) / std::pow(3.0, double(m));
      const double want2 = 0.5 * static_cast<double>(pascal_binomial(5, m)) *
                           std::pow(p, 5.0) / std::pow(2.0, double(m));
      CHECK(j1 == doctest::Approx(want1).epsilon(1e-12));
      CHECK(j2 == doctest::Approx(want2).epsilon(1e-12));
    }
  }
}

TEST_CASE("embedding counts beyond 64 bits use both limbs") {
  // C(70,35) ~ 1.12e20 exceeds 64 bits; embedding all-zero sequences into
  // an all-zero word hits exactly that count.
  const std::vector<SymbolIndex> zeros70(70, 0);
  const std::vector<SymbolIndex> zeros35(35, 0);
  const EmbeddingCount c =
      count_embeddings(ObservedSequence(zeros35), Word(zeros70));
  CHECK(!c.fits_u64());
  CHECK(c.high_limb() > 0);
  CHECK_THROWS_AS(c.as_u64(), OverflowError);
  // 112186277816662845432, computed independently.
  CHECK(c.as_double() == doctest::Approx(1.1218627781666285e20).epsilon(1e-12));
}

TEST_CASE("embedding count limb access") {
  const EmbeddingCount c = count_embeddings(seq("10"), word("1100"));
  CHECK(c.fits_u64());
  CHECK(c.low_limb() == 4);
  CHECK(c.high_limb() == 0);
  CHECK(c.as_double() == 4.0);
  CHECK(EmbeddingCount::from_u64(7).as_u64() == 7);

  std::vector<SymbolIndex> long_word(129, 0);
  CHECK_THROWS_AS(count_embeddings(ObservedSequence{}, Word(long_word)),
                  OverflowError);
}
