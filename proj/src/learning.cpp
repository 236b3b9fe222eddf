#include "subseq/learning.hpp"

#include <algorithm>

namespace subseq {

std::uint64_t PositionalHistogram::words_of_length(std::size_t n) const {
  auto it = by_len.find(n);
  if (it == by_len.end()) return 0;
  std::uint64_t total = 0;
  for (std::size_t sigma = 0; sigma < it->second.rows(); ++sigma)
    total = checked_add(total, it->second.at(sigma, 0));
  return total;
}

std::size_t SubsequenceHistogram::entry_count() const {
  std::size_t total = 0;
  for (const auto& [n, mats] : by_len)
    for (const auto& mat : mats) total += mat.rows() * mat.cols();
  return total;
}

PositionalHistogram learn_positional(const Vocabulary& v) {
  if (v.empty()) throw Error("cannot learn from an empty vocabulary");
  PositionalHistogram phi;
  phi.alphabet_size = v.alphabet().size();
  for (std::size_t n : v.lengths()) {
    CountMatrix mat(phi.alphabet_size, n);
    for (const Word& w : v.by_length(n))
      for (std::size_t j = 0; j < n; ++j)
        mat.at(w.at(j), j) = checked_add(mat.at(w.at(j), j), 1);
    phi.by_len.emplace(n, std::move(mat));
  }
  return phi;
}

namespace {

CountMatrix subsequence_matrix(const CountMatrix& phi_n, std::size_t n,
                               std::size_t m, const AlphaTable& alpha) {
  CountMatrix mat(phi_n.rows(), m);
  for (std::size_t sigma = 0; sigma < phi_n.rows(); ++sigma) {
    for (std::size_t i = 1; i <= m; ++i) {
      std::uint64_t sum = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        std::uint64_t a = alpha.alpha(n, m, j, i);
        if (a == 0) continue;
        sum = checked_add(sum, checked_mul(phi_n.at(sigma, j - 1), a));
      }
      mat.at(sigma, i - 1) = sum;
    }
  }
  return mat;
}

std::vector<CountMatrix> subsequence_family(const CountMatrix& phi_n,
                                            std::size_t n,
                                            const AlphaTable& alpha) {
  std::vector<CountMatrix> mats;
  mats.reserve(n);
  for (std::size_t m = 1; m <= n; ++m)
    mats.push_back(subsequence_matrix(phi_n, n, m, alpha));
  return mats;
}

}  // namespace

SubsequenceHistogram learn_subsequence(const PositionalHistogram& phi,
                                       const AlphaTable& alpha) {
  SubsequenceHistogram psi;
  psi.alphabet_size = phi.alphabet_size;
  for (const auto& [n, mat] : phi.by_len) {
    if (n > alpha.max_n())
      throw Error("alpha table too small for word length " +
                  std::to_string(n));
    psi.by_len.emplace(n, subsequence_family(mat, n, alpha));
  }
  return psi;
}

void RecognitionModel::require_finalized() const {
  if (!pending.empty())
    throw Error("model '" + label +
                "' has pending lengths; call finalize() before querying");
}

void RecognitionModel::add_word(const Word& w) {
  for (SymbolIndex s : w.letters())
    if (s >= alphabet.size()) throw Error("word letter outside model alphabet");
  const std::size_t n = w.length();
  auto it = phi.by_len.find(n);
  if (it == phi.by_len.end()) {
    phi.alphabet_size = alphabet.size();
    it = phi.by_len.emplace(n, CountMatrix(alphabet.size(), n)).first;
  }
  for (std::size_t j = 0; j < n; ++j) {
    auto& cell = it->second.at(w.at(j), j);
    cell = checked_add(cell, 1);
  }
  vocab_size = checked_add(vocab_size, 1);
  pending.insert(n);
}

void RecognitionModel::finalize() {
  if (pending.empty()) return;
  finalize(AlphaTable(max_len()));
}

void RecognitionModel::finalize(const AlphaTable& alpha) {
  psi.alphabet_size = phi.alphabet_size;
  for (std::size_t n : pending) {
    auto it = phi.by_len.find(n);
    if (it == phi.by_len.end()) continue;
    psi.by_len[n] = subsequence_family(it->second, n, alpha);
  }
  pending.clear();
}

std::size_t RecognitionModel::count_entries() const {
  std::size_t total = psi.entry_count();
  for (const auto& [n, mat] : phi.by_len) total += mat.rows() * mat.cols();
  return total;
}

RecognitionModel learn_model(const Vocabulary& v) {
  RecognitionModel model;
  model.label = v.label();
  model.alphabet = v.alphabet();
  model.prior = v.prior();
  model.vocab_size = v.size();
  model.phi = learn_positional(v);
  AlphaTable alpha(v.max_len());
  model.psi = learn_subsequence(model.phi, alpha);
  return model;
}

}  // namespace subseq
