#pragma once

#include <iosfwd>

namespace subseq {

// Runs the embedded invariant suite: placement-count identity, histogram
// column sums, embedding-count cross-checks, channel-likelihood
// normalization, and the built-in two-vocabulary fixtures. Prints one line
// per check and returns the number of failures. With corrupt_alpha set, one
// cached binomial entry is perturbed first so the identity check must fail.
int run_selftest(std::ostream& out, bool corrupt_alpha = false);

}  // namespace subseq
