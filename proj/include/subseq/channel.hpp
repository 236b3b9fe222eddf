#pragma once

#include <cstdint>

#include "subseq/rng.hpp"
#include "subseq/vocabulary.hpp"

namespace subseq {

// Deletes each letter independently with probability p, preserving the
// order of survivors. Draws come from the supplied stream.
ObservedSequence apply_deletions(const Word& w, double p, SplitMix64& rng);

// i.i.d. deletion channel. Each transmission is keyed by a draw index, so
// transmission k of a word is the same no matter how many calls preceded it.
struct DeletionChannel {
  double p = 0.0;
  std::uint64_t seed = 0;

  ObservedSequence transmit(const Word& w, std::uint64_t draw_index) const;
};

}  // namespace subseq
