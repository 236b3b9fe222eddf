#include "subseq/channel.hpp"

#include "subseq/error.hpp"

namespace subseq {

ObservedSequence apply_deletions(const Word& w, double p, SplitMix64& rng) {
  if (p < 0.0 || p > 1.0) throw Error("deletion probability outside [0,1]");
  std::vector<SymbolIndex> survivors;
  survivors.reserve(w.length());
  for (SymbolIndex letter : w.letters()) {
    // One draw per letter even at p = 0 or 1, so the stream layout does not
    // depend on p.
    const double u = rng.next_double();
    if (u >= p) survivors.push_back(letter);
  }
  return ObservedSequence(std::move(survivors));
}

ObservedSequence DeletionChannel::transmit(const Word& w,
                                           std::uint64_t draw_index) const {
  SplitMix64 rng = derive_stream(seed, draw_index);
  return apply_deletions(w, p, rng);
}

}  // namespace subseq
