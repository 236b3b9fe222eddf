#include "subseq/oracle.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "subseq/learning.hpp"

namespace subseq {

bool EmbeddingCount::fits_u64() const {
  return (value_ >> 64) == 0;
}

std::uint64_t EmbeddingCount::as_u64() const {
  if (!fits_u64())
    throw OverflowError("embedding count does not fit in 64 bits");
  return static_cast<std::uint64_t>(value_);
}

EmbeddingCount count_embeddings(const ObservedSequence& s, const Word& w) {
  const std::size_t m = s.length();
  const std::size_t n = w.length();
  if (n > 128)
    throw OverflowError("embedding counts supported for words up to 128 letters");
  if (m > n) return EmbeddingCount{};

  // dp[i] = embeddings of s[0..i) into the word prefix scanned so far.
  // Entries stay below C(128,64) < 2^127, so 128-bit adds cannot wrap.
  std::vector<unsigned __int128> dp(m + 1, 0);
  dp[0] = 1;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t upper = std::min(m, j + 1);
    for (std::size_t i = upper; i >= 1; --i)
      if (s.at(i - 1) == w.at(j)) dp[i] += dp[i - 1];
  }
  return EmbeddingCount(dp[m]);
}

double channel_likelihood(const ObservedSequence& s, const Word& w, double p) {
  if (p < 0.0 || p > 1.0) throw Error("deletion probability outside [0,1]");
  const auto m = static_cast<double>(s.length());
  const auto n = static_cast<double>(w.length());
  if (s.length() > w.length()) return 0.0;
  const EmbeddingCount count = count_embeddings(s, w);
  if (count.is_zero()) return 0.0;
  return count.as_double() * std::pow(p, n - m) * std::pow(1.0 - p, m);
}

namespace {

double embedding_mass(const std::vector<Word>& words,
                      const ObservedSequence& s) {
  double total = 0.0;
  for (const Word& w : words) total += count_embeddings(s, w).as_double();
  return total;
}

}  // namespace

double map_discriminant(const Vocabulary& v, const ObservedSequence& s,
                        double p) {
  if (p < 0.0 || p > 1.0) throw Error("deletion probability outside [0,1]");
  if (p == 1.0)
    throw Error("p = 1 deletes every symbol; classification is vacuous");
  for (SymbolIndex sym : s.letters())
    if (sym >= v.alphabet().size())
      throw Error("sequence symbol outside vocabulary alphabet");
  if (v.empty()) return 0.0;

  const std::size_t m = s.length();
  const double scale = v.prior() / static_cast<double>(v.size());
  if (m > v.max_len()) return 0.0;

  if (p == 0.0) return scale * embedding_mass(v.by_length(m), s);

  double total = 0.0;
  for (std::size_t n : v.lengths()) {
    if (n < m) continue;
    total += embedding_mass(v.by_length(n), s) *
             std::pow(p, static_cast<double>(n));
  }
  return scale * total;
}

Decision classify_map(std::span<const Vocabulary> vocabularies,
                      const ObservedSequence& s, double p, double eps) {
  if (vocabularies.empty()) throw Error("classify needs at least one vocabulary");
  for (std::size_t k = 1; k < vocabularies.size(); ++k)
    if (!(vocabularies[k].alphabet() == vocabularies[0].alphabet()))
      throw Error("vocabularies have mismatched alphabets");

  std::vector<ScoreBreakdown> scores;
  scores.reserve(vocabularies.size());
  for (const auto& v : vocabularies) {
    ScoreBreakdown b;
    b.label = v.label();
    b.seq_len = s.length();
    b.total = map_discriminant(v, s, p);
    scores.push_back(std::move(b));
  }
  return decide(std::move(scores), Method::exact_map, eps);
}

namespace {

// Iterates all sequences of length m over an alphabet of k symbols.
class SequenceOdometer {
public:
  SequenceOdometer(std::size_t k, std::size_t m)
      : k_(k), digits_(m, 0), fresh_(true) {}

  const std::vector<SymbolIndex>& digits() const { return digits_; }

  bool next() {
    if (fresh_) {
      fresh_ = false;
      return true;
    }
    for (std::size_t pos = digits_.size(); pos-- > 0;) {
      if (++digits_[pos] < k_) return true;
      digits_[pos] = 0;
    }
    return false;
  }

private:
  std::size_t k_;
  std::vector<SymbolIndex> digits_;
  bool fresh_;
};

std::uint64_t mass_u64(const std::vector<Word>& words,
                       const ObservedSequence& s) {
  std::uint64_t total = 0;
  for (const Word& w : words)
    total = checked_add(total, count_embeddings(s, w).as_u64());
  return total;
}

}  // namespace

ErrorAnalysisReport error_analysis(const Vocabulary& v1, const Vocabulary& v2,
                                   double p, std::uint64_t max_sequences) {
  if (p < 0.0 || p >= 1.0)
    throw Error("error analysis requires p in [0,1)");
  if (!(v1.alphabet() == v2.alphabet()))
    throw Error("vocabularies have mismatched alphabets");
  if (v1.prior() != v2.prior())
    throw Error("error analysis requires equiprobable vocabularies");
  if (v1.size() != v2.size() || v1.empty())
    throw Error("error analysis requires equal nonempty vocabulary sizes");
  const auto lengths1 = v1.lengths();
  const auto lengths2 = v2.lengths();
  if (lengths1.size() != 1 || lengths2.size() != 1 ||
      lengths1[0] != lengths2[0])
    throw Error("error analysis requires all words of one common length");

  const std::size_t n = lengths1[0];
  const std::size_t k = v1.alphabet().size();
  const auto N = static_cast<std::uint64_t>(v1.size());

  // Enumeration budget: sum_m k^m sequences.
  std::uint64_t planned = 0;
  {
    std::uint64_t pw = 1;
    for (std::size_t m = 0; m <= n; ++m) {
      planned = checked_add(planned, pw);
      pw = checked_mul(pw, k);
    }
  }
  if (planned > max_sequences)
    throw Error("error analysis enumeration budget exceeded (" +
                std::to_string(planned) + " sequences > " +
                std::to_string(max_sequences) + ")");

  // Similarity scores come from the actual recognition path.
  const RecognitionModel model1 = learn_model(v1);
  const RecognitionModel model2 = learn_model(v2);

  ErrorAnalysisReport report;
  report.mu.assign(n + 1, 0);
  report.lambda.assign(n + 1, 0);
  report.tie_mass.assign(n + 1, 0);
  report.assumptions = {N, n, k, p, planned, true};

  const double q = 1.0 - p;
  const auto& words1 = v1.by_length(n);
  const auto& words2 = v2.by_length(n);

  for (std::size_t m = 0; m <= n; ++m) {
    double sqrt_sum = 0.0;
    SequenceOdometer odo(k, m);
    while (odo.next()) {
      const ObservedSequence s(odo.digits());
      const std::uint64_t mass1 = mass_u64(words1, s);
      const std::uint64_t mass2 = mass_u64(words2, s);
      report.mu[m] = checked_add(report.mu[m], std::min(mass1, mass2));

      const double g1 = similarity_score(model1, s, n);
      const double g2 = similarity_score(model2, s, n);
      if (g1 < g2)
        report.lambda[m] = checked_add(report.lambda[m], mass1);
      else if (g2 < g1)
        report.lambda[m] = checked_add(report.lambda[m], mass2);
      else
        report.tie_mass[m] =
            checked_add(report.tie_mass[m], checked_add(mass1, mass2));

      sqrt_sum += std::sqrt(g1 * g2);
    }
    const double weight = std::pow(p, static_cast<double>(n - m)) *
                          std::pow(q, static_cast<double>(m));
    const double half_n = 1.0 / (2.0 * static_cast<double>(N));
    report.map_error += half_n * weight * static_cast<double>(report.mu[m]);
    report.algo_error +=
        half_n * weight *
        (static_cast<double>(report.lambda[m]) +
         0.5 * static_cast<double>(report.tie_mass[m]));
    report.sqrt_bound += weight * sqrt_sum / static_cast<double>(N);
  }
  return report;
}

void write_error_report_csv(const ErrorAnalysisReport& report,
                            std::ostream& out) {
  const auto& a = report.assumptions;
  char line[160];
  std::snprintf(line, sizeof(line),
                "# error-analysis N=%llu n=%zu alphabet=%zu p=%.6g "
                "sequences=%llu draws=half\n",
                static_cast<unsigned long long>(a.vocab_size), a.word_len,
                a.alphabet_size, a.p,
                static_cast<unsigned long long>(a.sequences_enumerated));
  out << line << "quantity,m,value\n";
  for (std::size_t m = 0; m < report.mu.size(); ++m)
    out << "mu," << m << ',' << report.mu[m] << '\n';
  for (std::size_t m = 0; m < report.lambda.size(); ++m)
    out << "lambda," << m << ',' << report.lambda[m] << '\n';
  for (std::size_t m = 0; m < report.tie_mass.size(); ++m)
    out << "tie_mass," << m << ',' << report.tie_mass[m] << '\n';
  std::snprintf(line, sizeof(line), "map_error,,%.12g\n", report.map_error);
  out << line;
  std::snprintf(line, sizeof(line), "algo_error,,%.12g\n", report.algo_error);
  out << line;
  std::snprintf(line, sizeof(line), "sqrt_bound,,%.12g\n", report.sqrt_bound);
  out << line;
}

}  // namespace subseq
