// The canonical two-vocabulary fixture used across suites: binary alphabet,
// vocabulary theta1 = {0101, 1100} and its mirror theta2 = {1010, 0011},
// equal priors. Expected histogram matrices are frozen here.
#pragma once

#include <cstdint>
#include <vector>

#include "subseq/learning.hpp"
#include "subseq/vocabulary.hpp"

namespace subseq::testing {

inline Vocabulary fixture_theta1() {
  Vocabulary v("theta1", Alphabet::from_chars("01"), 0.5);
  v.insert(parse_word("0101", v.alphabet()));
  v.insert(parse_word("1100", v.alphabet()));
  return v;
}

inline Vocabulary fixture_theta2() {
  Vocabulary v("theta2", Alphabet::from_chars("01"), 0.5);
  v.insert(parse_word("1010", v.alphabet()));
  v.insert(parse_word("0011", v.alphabet()));
  return v;
}

using Matrix = std::vector<std::vector<std::uint64_t>>;

inline const Matrix kPhi4Theta1 = {{1, 0, 2, 1}, {1, 2, 0, 1}};
inline const Matrix kPhi4Theta2 = {{1, 2, 0, 1}, {1, 0, 2, 1}};

inline const Matrix kPsi41Theta1 = {{4}, {4}};
inline const Matrix kPsi42Theta1 = {{5, 7}, {7, 5}};
inline const Matrix kPsi43Theta1 = {{3, 4, 5}, {5, 4, 3}};
inline const Matrix kPsi44Theta1 = {{1, 0, 2, 1}, {1, 2, 0, 1}};

inline const Matrix kPsi41Theta2 = {{4}, {4}};
inline const Matrix kPsi42Theta2 = {{7, 5}, {5, 7}};
inline const Matrix kPsi43Theta2 = {{5, 4, 3}, {3, 4, 5}};
inline const Matrix kPsi44Theta2 = {{1, 2, 0, 1}, {1, 0, 2, 1}};

inline bool matrix_equals(const CountMatrix* mat, const Matrix& expected) {
  if (!mat || mat->rows() != expected.size()) return false;
  for (std::size_t r = 0; r < expected.size(); ++r) {
    if (mat->cols() != expected[r].size()) return false;
    for (std::size_t c = 0; c < expected[r].size(); ++c)
      if (mat->at(r, c) != expected[r][c]) return false;
  }
  return true;
}

// The full decision list for the fixture pair: winner label, or nullptr for
// a draw. Covers every sequence of lengths 1..3 plus the four words.
struct ExpectedDecision {
  const char* sequence;
  const char* winner;  // nullptr = draw
};

inline const std::vector<ExpectedDecision> kFixtureDecisions = {
    {"0", nullptr},     {"1", nullptr},
    {"00", nullptr},    {"11", nullptr},
    {"01", "theta2"},   {"10", "theta1"},
    {"000", nullptr},   {"111", nullptr},
    {"100", "theta1"},  {"110", "theta1"},
    {"001", "theta2"},  {"011", "theta2"},
    {"010", nullptr},   {"101", nullptr},
    {"0101", "theta1"}, {"1100", "theta1"},
    {"1010", "theta2"}, {"0011", "theta2"},
};

}  // namespace subseq::testing
