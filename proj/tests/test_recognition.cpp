#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "subseq/generators.hpp"
#include "subseq/oracle.hpp"
#include "subseq/recognition.hpp"

using namespace subseq;
using namespace subseq::testing;

namespace {

std::vector<RecognitionModel> fixture_models() {
  return {learn_model(fixture_theta1()), learn_model(fixture_theta2())};
}

}  // namespace

TEST_CASE("order-4 similarity scores from the fixture matrices") {
  const auto models = fixture_models();
  const Alphabet& a = models[0].alphabet;
  const ObservedSequence s01 = parse_sequence("01", a);
  // (5 + 5) / 2 and (7 + 7) / 2, read off the order-2 matrices.
  CHECK(similarity_score(models[0], s01, 4) == doctest::Approx(5.0));
  CHECK(similarity_score(models[1], s01, 4) == doctest::Approx(7.0));

  // Lengths with no words score zero.
  Vocabulary mixed("mixed", a, 1.0);
  mixed.insert(parse_word("0101", a));
  mixed.insert(parse_word("11", a));
  const RecognitionModel mm = learn_model(mixed);
  CHECK(similarity_score(mm, s01, 3) == 0.0);

  // Empty sequence: the score degenerates to the word count per length.
  CHECK(similarity_score(mm, ObservedSequence{}, 4) == 1.0);
  CHECK(similarity_score(mm, ObservedSequence{}, 3) == 0.0);
}

TEST_CASE("similarity score rejects bad inputs") {
  const auto models = fixture_models();
  const ObservedSequence s01 = parse_sequence("01", models[0].alphabet);
  CHECK_THROWS_AS(similarity_score(models[0], s01, 1), Error);   // n < |s|
  CHECK_THROWS_AS(similarity_score(models[0], s01, 9), Error);   // n > L
  CHECK_THROWS_AS(similarity_score(models[0], ObservedSequence({7}), 4), Error);
}

TEST_CASE("total score matches the closed form on the fixture") {
  const auto models = fixture_models();
  const Alphabet& a = models[0].alphabet;
  const ObservedSequence s01 = parse_sequence("01", a);
  for (double p : {0.1, 0.25, 0.5, 0.9}) {
    const double p4 = p * p * p * p;
    const ScoreBreakdown b1 = total_score(models[0], s01, p);
    const ScoreBreakdown b2 = total_score(models[1], s01, p);
    // prior/|V| = 1/4; only the n=4 slice holds words.
    CHECK(b1.total == doctest::Approx(0.25 * 5.0 * p4).epsilon(1e-12));
    CHECK(b2.total == doctest::Approx(0.25 * 7.0 * p4).epsilon(1e-12));
  }
}

TEST_CASE("total score edge cases") {
  const auto models = fixture_models();
  const Alphabet& a = models[0].alphabet;

  SUBCASE("sequence longer than every word scores zero") {
    const ObservedSequence long_s = parse_sequence("010101", a);
    const ScoreBreakdown b = total_score(models[0], long_s, 0.3);
    CHECK(b.total == 0.0);
    CHECK(b.gamma.empty());
  }
  SUBCASE("p = 0 scores exact matches only") {
    const ScoreBreakdown hit =
        total_score(models[0], parse_sequence("0101", a), 0.0);
    CHECK(hit.total == doctest::Approx(0.25 * 1.5));  // gamma_{4,4}(0101) = 6/4
    const ScoreBreakdown miss =
        total_score(models[0], parse_sequence("01", a), 0.0);
    // Only the n = 2 slice counts at p = 0, and it holds no words.
    CHECK(miss.total == 0.0);
  }
  SUBCASE("p = 1 is rejected") {
    CHECK_THROWS_AS(total_score(models[0], parse_sequence("01", a), 1.0),
                    Error);
  }
  SUBCASE("p outside [0,1] is rejected") {
    CHECK_THROWS_AS(total_score(models[0], parse_sequence("01", a), -0.1),
                    Error);
  }
}

TEST_CASE("all-combinations vocabularies score in closed form") {
  // Vocabulary k holds every length-L_k word over its own sub-alphabet; on
  // a sequence over the shared symbols the total score collapses to
  //   prior * C(L_k, m) * p^L_k / |sub-alphabet k|.
  const Alphabet full({"0", "1", "2"});
  const Vocabulary sub1 =
      generate_all_combinations("v1", full, 4);  // |alphabet| = 3, L = 4
  const Vocabulary sub2 =
      generate_all_combinations("v2", Alphabet::from_chars("01"), 5);

  Vocabulary v1("v1", full, 0.5);
  for (std::size_t k = 0; k < sub1.size(); ++k) v1.insert(sub1.word(k));
  Vocabulary v2("v2", full, 0.5);
  for (std::size_t k = 0; k < sub2.size(); ++k) v2.insert(sub2.word(k));

  const RecognitionModel m1 = learn_model(v1);
  const RecognitionModel m2 = learn_model(v2);
  AlphaTable table(5);

  for (double p : {0.2, 0.5}) {
    for (std::size_t m = 0; m <= 3; ++m) {
      // Sequences over the shared symbols {0, 1}.
      SplitMix64 rng(83 + m);
      const ObservedSequence s = random_sequence(rng, m, 2);
      const double j1 = total_score(m1, s, p).total;
      const double j2 = total_score(m2, s, p).total;
      const double want1 = 0.5 *
                           static_cast<double>(table.binomial(4, m)) *
                           std::pow(p, 4.0) / 3.0;
      const double want2 = 0.5 *
                           static_cast<double>(table.binomial(5, m)) *
                           std::pow(p, 5.0) / 2.0;
      CHECK(j1 == doctest::Approx(want1).epsilon(1e-12));
      CHECK(j2 == doctest::Approx(want2).epsilon(1e-12));
    }
  }
}

TEST_CASE("fixture decision table, draws included") {
  const auto models = fixture_models();
  const Alphabet& a = models[0].alphabet;
  for (double p : {0.1, 0.3, 0.7}) {
    for (const auto& expected : kFixtureDecisions) {
      const Decision d = classify(models, parse_sequence(expected.sequence, a), p);
      INFO("sequence ", expected.sequence, " at p ", p);
      if (expected.winner == nullptr) {
        CHECK(d.draw());
      } else {
        REQUIRE(!d.draw());
        CHECK(*d.winner == expected.winner);
      }
    }
  }
}

TEST_CASE("empty observation draws on the fixture") {
  const auto models = fixture_models();
  const Decision d = classify(models, ObservedSequence{}, 0.3);
  CHECK(d.draw());
}

TEST_CASE("classify validates alphabets and accepts eps = 0") {
  const auto models = fixture_models();
  RecognitionModel other = learn_model(
      [] {
        Vocabulary v("other", Alphabet::from_chars("ab"));
        v.insert(parse_word("ab", v.alphabet()));
        return v;
      }());
  std::vector<RecognitionModel> mixed = {models[0], other};
  CHECK_THROWS_AS(classify(mixed, ObservedSequence{}, 0.3), Error);

  const Decision d =
      classify(models, parse_sequence("01", models[0].alphabet), 0.3, 0.0);
  CHECK(*d.winner == "theta2");
}

TEST_CASE("prior scaling leaves every decision unchanged") {
  SplitMix64 rng(53);
  const Alphabet a = Alphabet::from_chars("ab");
  for (int round = 0; round < 20; ++round) {
    Vocabulary v1 = random_vocabulary(rng, a, 8, 5, "v1");
    Vocabulary v2 = random_vocabulary(rng, a, 8, 5, "v2");
    v1.set_prior(0.5);
    v2.set_prior(0.5);
    std::vector<RecognitionModel> base = {learn_model(v1), learn_model(v2)};
    v1.set_prior(0.125);
    v2.set_prior(0.125);
    std::vector<RecognitionModel> scaled = {learn_model(v1), learn_model(v2)};
    const ObservedSequence s = random_sequence(rng, rng.next_below(5), 2);
    const double p = 0.1 + 0.2 * static_cast<double>(rng.next_below(4));
    const Decision d1 = classify(base, s, p);
    const Decision d2 = classify(scaled, s, p);
    CHECK(d1.draw() == d2.draw());
    if (!d1.draw()) CHECK(*d1.winner == *d2.winner);
  }
}

TEST_CASE("a vocabulary scoring zero never beats a positive one") {
  const Alphabet a = Alphabet::from_chars("01");
  Vocabulary zeros("zeros", a, 0.5);
  zeros.insert(parse_word("00", a));
  Vocabulary mixed("mixed", a, 0.5);
  mixed.insert(parse_word("01", a));
  std::vector<RecognitionModel> models = {learn_model(zeros),
                                          learn_model(mixed)};
  const Decision d = classify(models, parse_sequence("11", a), 0.4);
  REQUIRE(!d.draw());
  CHECK(*d.winner == "mixed");
}

TEST_CASE("identical inputs give identical decisions") {
  const auto models = fixture_models();
  const ObservedSequence s = parse_sequence("10", models[0].alphabet);
  const Decision first = classify(models, s, 0.3);
  for (int k = 0; k < 5; ++k) {
    const Decision again = classify(models, s, 0.3);
    CHECK(again.draw() == first.draw());
    CHECK(again.scores[0].total == first.scores[0].total);
    CHECK(again.scores[1].total == first.scores[1].total);
  }
}

TEST_CASE("similarity dominates the exact embedding mass") {
  // The order-n score upper-bounds the total number of ways the sequence
  // embeds into the length-n slice. Checked as integers: the raw position
  // sum behind the score must be at least m times the embedding mass.
  SplitMix64 rng(59);
  for (int round = 0; round < 40; ++round) {
    const std::size_t k = 2 + rng.next_below(2);
    const Alphabet a = k == 2 ? Alphabet::from_chars("01")
                              : Alphabet::from_chars("012");
    const Vocabulary v = random_vocabulary(rng, a, 2 + rng.next_below(18), 8);
    const RecognitionModel model = learn_model(v);
    for (std::size_t n : v.lengths()) {
      for (std::size_t m = 0; m <= n; ++m) {
        for (int draw = 0; draw < 10; ++draw) {
          const ObservedSequence s = random_sequence(rng, m, k);
          std::uint64_t mass = 0;
          for (const Word& w : v.by_length(n))
            mass += brute_embeddings(s, w);
          if (m == 0) {
            // Every word embeds the empty sequence exactly once.
            CHECK(similarity_score(model, s, n) ==
                  static_cast<double>(mass));
            continue;
          }
          std::uint64_t psi_sum = 0;
          for (std::size_t i = 0; i < m; ++i)
            psi_sum += model.psi.count(n, m, s.at(i), i);
          CHECK(psi_sum >= mass * m);
          CHECK(similarity_score(model, s, n) ==
                static_cast<double>(psi_sum) / static_cast<double>(m));
        }
      }
    }
  }
}

TEST_CASE("instrumentation stays within m * L lookups") {
  const auto models = fixture_models();
  const Alphabet& a = models[0].alphabet;
  for (const char* text : {"0", "01", "011", "0101"}) {
    const ObservedSequence s = parse_sequence(text, a);
    const ScoreBreakdown b = total_score(models[0], s, 0.3);
    CHECK(b.psi_lookups <= s.length() * models[0].max_len());
  }
}

TEST_CASE("regular histogram draws on the fixture pair") {
  const auto models = fixture_models();
  const Alphabet& a = models[0].alphabet;
  for (const char* text : {"0", "1", "01", "10", "010", "1100", "000111"}) {
    const Decision d =
        classify_regular_histogram(models, parse_sequence(text, a));
    CHECK(d.draw());
  }
}

TEST_CASE("regular histogram follows dominant symbol frequencies") {
  const Alphabet a = Alphabet::from_chars("ab");
  Vocabulary all_a("all_a", a, 0.5);
  all_a.insert(parse_word("aa", a));
  Vocabulary half("half", a, 0.5);
  half.insert(parse_word("ab", a));
  std::vector<RecognitionModel> models = {learn_model(all_a),
                                          learn_model(half)};
  const Decision d = classify_regular_histogram(models, parse_sequence("aa", a));
  REQUIRE(!d.draw());
  CHECK(*d.winner == "all_a");

  // A symbol unseen by one vocabulary sends its score to -infinity.
  const Decision d2 = classify_regular_histogram(models, parse_sequence("b", a));
  REQUIRE(!d2.draw());
  CHECK(*d2.winner == "half");
}
