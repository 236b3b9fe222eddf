#pragma once

#include <cstdint>
#include <vector>

#include "subseq/error.hpp"

namespace subseq {

// Checked 64-bit count arithmetic. Throws OverflowError instead of wrapping:
// a silently wrapped count would corrupt every downstream score.
std::uint64_t checked_add(std::uint64_t a, std::uint64_t b);
std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);

// C(n, k) with exact 64-bit arithmetic; 0 when k > n.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

// Pascal triangle up to max_n, built once with checked additions.
class BinomialTable {
public:
  explicit BinomialTable(std::size_t max_n);

  std::size_t max_n() const { return max_n_; }
  std::uint64_t at(std::size_t n, std::size_t k) const {
    if (k > n) return 0;
    return rows_[n][k];
  }

private:
  friend class AlphaTable;
  std::size_t max_n_;
  std::vector<std::vector<std::uint64_t>> rows_;
};

// Placement counts for order-preserving index maps: alpha(n,m,j,i) is the
// number of strictly increasing maps of m positions into n that send output
// position i to input position j,
//
//     alpha(n,m,j,i) = C(j-1, i-1) * C(n-j, m-i),
//
// with the identity sum_j alpha(n,m,j,i) = C(n,m) for every i <= m.
// Positions j and i are 1-based, matching the combinatorial definition.
// Immutable after construction; concurrent reads need no coordination.
class AlphaTable {
public:
  explicit AlphaTable(std::size_t max_n);

  std::size_t max_n() const { return binom_.max_n(); }
  std::uint64_t binomial(std::size_t n, std::size_t k) const {
    return binom_.at(n, k);
  }

  // Requires 1 <= i <= m <= n <= max_n and 1 <= j <= n.
  std::uint64_t alpha(std::size_t n, std::size_t m, std::size_t j,
                      std::size_t i) const;

  // Self-test hook: perturbs one cached binomial entry so that the
  // identity checker demonstrably reports corruption. Never call outside
  // fault-injection paths.
  void corrupt_entry_for_selftest(std::size_t n, std::size_t k);

private:
  BinomialTable binom_;
};

// True iff sum_j alpha(n,m,j,i) == C(n,m) for every i = 1..m.
bool verify_alpha_identity(const AlphaTable& table, std::size_t n,
                           std::size_t m);

}  // namespace subseq
