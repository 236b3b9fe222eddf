#pragma once

#include <stdexcept>
#include <string>

namespace subseq {

// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed input files: vocabulary text files, model files,
// unsupported format versions, checksum mismatches.
class FormatError : public Error {
public:
  using Error::Error;
};

// Exact count arithmetic exceeded the 64-bit width. Counts are never
// saturated or wrapped; the operation fails instead.
class OverflowError : public Error {
public:
  using Error::Error;
};

}  // namespace subseq
