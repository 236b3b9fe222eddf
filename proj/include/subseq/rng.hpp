#pragma once

#include <cstdint>

namespace subseq {

// SplitMix64 finalizer (Steele/Lea/Flood). Bijective on 64-bit words.
inline std::uint64_t mix64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// SplitMix64 generator. Chosen over std::mt19937_64 because the standard
// distributions are not bit-portable across implementations; this generator
// plus the bounded-draw scheme below produce identical streams on every
// platform, which keeps seeded experiments reproducible everywhere.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix64(state_);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound). Lemire multiply-shift with rejection,
  // so the result is unbiased and identical across platforms.
  std::uint64_t next_below(std::uint64_t bound) {
    unsigned __int128 r = static_cast<unsigned __int128>(next_u64()) * bound;
    auto lo = static_cast<std::uint64_t>(r);
    if (lo < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (lo < threshold) {
        r = static_cast<unsigned __int128>(next_u64()) * bound;
        lo = static_cast<std::uint64_t>(r);
      }
    }
    return static_cast<std::uint64_t>(r >> 64);
  }

private:
  std::uint64_t state_;
};

// Derives an independent child stream from a master seed and up to two
// stream tags (e.g. (trial, word)). Decouples parallel draws from their
// evaluation order: stream (master, a, b) is the same no matter when or
// where it is consumed.
inline SplitMix64 derive_stream(std::uint64_t master, std::uint64_t a,
                                std::uint64_t b = 0) {
  std::uint64_t s = mix64(master ^ 0x7F4A7C159E3779B9ULL);
  s = mix64(s ^ (a + 0x9E3779B97F4A7C15ULL));
  s = mix64(s ^ (b + 0xD1B54A32D192ED03ULL));
  return SplitMix64(s);
}

}  // namespace subseq
