#include "subseq/recognition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace subseq {

std::string_view method_name(Method m) {
  switch (m) {
    case Method::subsequence_histogram: return "subsequence-histogram";
    case Method::regular_histogram: return "regular-histogram";
    case Method::exact_map: return "exact-map";
  }
  return "?";
}

std::optional<Method> method_from_name(std::string_view name) {
  if (name == "subsequence-histogram") return Method::subsequence_histogram;
  if (name == "regular-histogram") return Method::regular_histogram;
  if (name == "exact-map") return Method::exact_map;
  return std::nullopt;
}

namespace {

void check_sequence(const RecognitionModel& model, const ObservedSequence& s) {
  for (SymbolIndex sym : s.letters())
    if (sym >= model.alphabet.size())
      throw Error("sequence symbol outside model alphabet");
}

double similarity_score_counted(const RecognitionModel& model,
                                const ObservedSequence& s, std::size_t n,
                                std::uint64_t& lookups) {
  const std::size_t m = s.length();
  if (m == 0) return static_cast<double>(model.words_of_length(n));
  const CountMatrix* mat = model.psi.matrix(n, m);
  if (!mat) return 0.0;  // no words of length n: zero histogram
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < m; ++i)
    sum = checked_add(sum, mat->at(s.at(i), i));
  lookups += m;
  return static_cast<double>(sum) / static_cast<double>(m);
}

}  // namespace

double similarity_score(const RecognitionModel& model,
                        const ObservedSequence& s, std::size_t n) {
  model.require_finalized();
  check_sequence(model, s);
  if (n < s.length() || n > model.max_len())
    throw Error("similarity order n must satisfy |s| <= n <= max_len");
  std::uint64_t lookups = 0;
  return similarity_score_counted(model, s, n, lookups);
}

ScoreBreakdown total_score(const RecognitionModel& model,
                           const ObservedSequence& s, double p) {
  model.require_finalized();
  check_sequence(model, s);
  if (p < 0.0 || p > 1.0) throw Error("deletion probability outside [0,1]");
  if (p == 1.0)
    throw Error("p = 1 deletes every symbol; classification is vacuous");

  ScoreBreakdown out;
  out.label = model.label;
  out.seq_len = s.length();
  const std::size_t m = s.length();
  const std::size_t L = model.max_len();
  if (m > L || model.vocab_size == 0) return out;  // empty sum

  const double scale = model.prior / static_cast<double>(model.vocab_size);

  if (p == 0.0) {
    // Exact-match mode: no deletions, only words of length m can explain s.
    out.gamma.push_back(similarity_score_counted(model, s, m, out.psi_lookups));
    out.total = scale * out.gamma[0];
    return out;
  }

  out.gamma.resize(L - m + 1, 0.0);
  std::vector<double> terms(out.gamma.size(), 0.0);
  double power = std::pow(p, static_cast<double>(m));
  for (std::size_t n = m; n <= L; ++n) {
    out.gamma[n - m] = similarity_score_counted(model, s, n, out.psi_lookups);
    terms[n - m] = out.gamma[n - m] * power;
    power *= p;
  }
  // Terms shrink with n; summing from n = L down adds smallest first.
  double total = 0.0;
  for (std::size_t k = terms.size(); k-- > 0;) total += terms[k];
  out.total = scale * total;
  return out;
}

Decision decide(std::vector<ScoreBreakdown> scores, Method method,
                double eps) {
  if (scores.empty()) throw Error("classify needs at least one model");
  if (eps < 0.0) throw Error("draw tolerance must be nonnegative");

  std::size_t best = 0;
  for (std::size_t k = 1; k < scores.size(); ++k)
    if (scores[k].total > scores[best].total) best = k;

  Decision d;
  d.method = method;
  bool tie = false;
  if (scores.size() > 1) {
    double runner = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < scores.size(); ++k)
      if (k != best) runner = std::max(runner, scores[k].total);
    const double top = scores[best].total;
    if (std::isinf(top) && std::isinf(runner)) {
      tie = true;  // both -inf (regular-histogram with unseen symbols)
    } else if (std::isinf(runner)) {
      tie = false;
    } else {
      const double mag = std::max(std::abs(top), std::abs(runner));
      tie = std::abs(top - runner) <= eps * mag;
    }
  }
  if (!tie) d.winner = scores[best].label;
  d.scores = std::move(scores);
  return d;
}

namespace {

void check_shared_alphabet(std::span<const RecognitionModel> models) {
  if (models.empty()) throw Error("classify needs at least one model");
  for (std::size_t k = 1; k < models.size(); ++k)
    if (!(models[k].alphabet == models[0].alphabet))
      throw Error("models '" + models[0].label + "' and '" +
                  models[k].label + "' have mismatched alphabets");
}

}  // namespace

Decision classify(std::span<const RecognitionModel> models,
                  const ObservedSequence& s, double p, double eps) {
  check_shared_alphabet(models);
  std::vector<ScoreBreakdown> scores;
  scores.reserve(models.size());
  for (const auto& model : models) scores.push_back(total_score(model, s, p));
  return decide(std::move(scores), Method::subsequence_histogram, eps);
}

Decision classify_regular_histogram(std::span<const RecognitionModel> models,
                                    const ObservedSequence& s, double eps) {
  check_shared_alphabet(models);
  std::vector<ScoreBreakdown> scores;
  scores.reserve(models.size());
  for (const auto& model : models) {
    model.require_finalized();
    check_sequence(model, s);
    // Symbol frequencies across the whole vocabulary, order ignored.
    std::vector<std::uint64_t> occurrences(model.alphabet.size(), 0);
    std::uint64_t letters = 0;
    for (const auto& [n, mat] : model.phi.by_len)
      for (std::size_t sigma = 0; sigma < mat.rows(); ++sigma)
        for (std::size_t j = 0; j < mat.cols(); ++j) {
          occurrences[sigma] = checked_add(occurrences[sigma],
                                           mat.at(sigma, j));
          letters = checked_add(letters, mat.at(sigma, j));
        }
    ScoreBreakdown b;
    b.label = model.label;
    b.seq_len = s.length();
    double log_score = std::log(model.prior);
    for (SymbolIndex sym : s.letters()) {
      if (occurrences[sym] == 0 || letters == 0) {
        log_score = -std::numeric_limits<double>::infinity();
        break;
      }
      log_score += std::log(static_cast<double>(occurrences[sym]) /
                            static_cast<double>(letters));
    }
    b.total = log_score;
    scores.push_back(std::move(b));
  }
  return decide(std::move(scores), Method::regular_histogram, eps);
}

}  // namespace subseq
