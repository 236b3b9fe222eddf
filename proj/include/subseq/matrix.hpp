#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace subseq {

// Dense row-major matrix of exact 64-bit counts. Rows index alphabet
// symbols, columns index positions.
class CountMatrix {
public:
  CountMatrix() = default;
  CountMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::uint64_t at(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  std::uint64_t& at(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }

  const std::vector<std::uint64_t>& data() const { return data_; }
  std::vector<std::uint64_t>& data() { return data_; }

  bool operator==(const CountMatrix& other) const = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint64_t> data_;
};

}  // namespace subseq
