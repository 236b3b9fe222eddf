#include "subseq/combinatorics.hpp"

#include <limits>
#include <string>

namespace subseq {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw OverflowError("count addition overflowed 64 bits");
  return r;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw OverflowError("count multiplication overflowed 64 bits");
  return r;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  // Multiplicative form. After step i the accumulator equals C(n-k+i, i),
  // which is nondecreasing in i, so the first 64-bit overflow is final.
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<std::uint64_t>::max())
      throw OverflowError("binomial(" + std::to_string(n) + "," +
                          std::to_string(k) + ") overflows 64 bits");
  }
  return static_cast<std::uint64_t>(r);
}

BinomialTable::BinomialTable(std::size_t max_n) : max_n_(max_n) {
  rows_.resize(max_n + 1);
  for (std::size_t n = 0; n <= max_n; ++n) {
    rows_[n].assign(n + 1, 1);
    for (std::size_t k = 1; k < n; ++k)
      rows_[n][k] = checked_add(rows_[n - 1][k - 1], rows_[n - 1][k]);
  }
}

AlphaTable::AlphaTable(std::size_t max_n) : binom_(max_n) {}

std::uint64_t AlphaTable::alpha(std::size_t n, std::size_t m, std::size_t j,
                                std::size_t i) const {
  if (i < 1 || j < 1 || i > m || m > n || j > n || n > binom_.max_n())
    throw Error("alpha indices out of range");
  return checked_mul(binom_.at(j - 1, i - 1), binom_.at(n - j, m - i));
}

void AlphaTable::corrupt_entry_for_selftest(std::size_t n, std::size_t k) {
  if (n <= binom_.max_n() && k <= n) binom_.rows_[n][k] += 1;
}

bool verify_alpha_identity(const AlphaTable& table, std::size_t n,
                           std::size_t m) {
  const std::uint64_t expected = table.binomial(n, m);
  for (std::size_t i = 1; i <= m; ++i) {
    std::uint64_t sum = 0;
    for (std::size_t j = 1; j <= n; ++j)
      sum = checked_add(sum, table.alpha(n, m, j, i));
    if (sum != expected) return false;
  }
  return true;
}

}  // namespace subseq
