#pragma once

#include <cstdint>

#include "pedcmp/errors.hpp"
#include "pedcmp/matching.hpp"
#include "pedcmp/pedigree.hpp"

namespace pedcmp {

// Randomized matching heuristic for generational pedigrees with compatible
// labels. Each trial fixes the label-forced pairs, then walks the
// generations from the youngest containing unmatched individuals upward; per
// generation and gender it samples a pairing without replacement, drawing a
// pair with probability proportional to one plus the number of labels shared
// by the descendant sets of the two candidates. Unequal per-generation
// counts are padded with dummies (a dummy pairing leaves the real individual
// unmatched). Returns the smallest match distance over `trials` trials; an
// upper bound on the edit distance, reproducible for a fixed seed.
DistanceReport random_matching(const Pedigree& p, const Pedigree& q, int trials,
                               uint64_t seed);

}  // namespace pedcmp
