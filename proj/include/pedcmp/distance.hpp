#pragma once

#include <cstdint>
#include <optional>

#include "pedcmp/errors.hpp"
#include "pedcmp/matching.hpp"
#include "pedcmp/pedigree.hpp"

namespace pedcmp {

// Exact edit distance by iterative-deepening branch and bound over all
// gender- and label-respecting injective partial maps. Works on arbitrary
// gendered digraphs (pedigrees, rooted trees). Individuals are assigned
// children-first so that each assignment settles the edges into the
// assignee's children; subtrees are cut when the well-matched edges still
// reachable (a sorted pairing of remaining out-degrees per gender) cannot
// meet the current target. The witness matching is the first optimum found
// in deterministic order. Throws TooLargeError above `cap` vertices.
DistanceReport branch_and_bound(const MatchGraph& g, const MatchGraph& h,
                                int cap = 14, const Matching* hint = nullptr);

// Pedigree entry point; seeds the search with a randomized-heuristic
// incumbent when the inputs support it.
DistanceReport branch_and_bound(const Pedigree& p, const Pedigree& q, int cap = 14);

// Exact solver for generational two-generation pairs whose youngest
// generation is fully labeled: the label-forced child matching reduces the
// parent matching to one maximum-weight assignment per gender (weight =
// number of co-matched children).
DistanceReport two_generation_exact(const Pedigree& p, const Pedigree& q);

// Upper bound on the number of per-gender layer matchings enumerated by
// dp_bounded for one fixed previous-generation matching, as a function of
// the per-gender generation size n and the cost budget c:
//   T(1, c) = T(n, 0) = T(n, 1) = 1,
//   T(n, c) = T(n-1, c) + (n-1) T(n-1, c-2),
// which is O(n^c). Saturates at UINT64_MAX instead of overflowing.
uint64_t bounded_matching_count(int n, int c);

// Instrumentation for dp_bounded.
struct DpStats {
  uint64_t steps = 0;                  // (generation, fixed matching) steps
  uint64_t max_enumerated = 0;         // largest per-step enumeration count
  uint64_t budget = 0;                 // T(m_max, k)^2 over the whole run
  uint64_t budget_exceeded_steps = 0;  // steps whose count exceeded their bound
  uint64_t table_peak = 0;             // largest per-generation table
};

// Exact distance over generation-preserving matchings, assuming every pair
// of consecutive generations can be matched with fewer than `k` edge edits.
// Dynamic program over per-generation matchings, evaluated youngest to
// oldest; for each table entry of generation i+1 the generation-i matchings
// are enumerated vertex by vertex, abandoning any partial assignment whose
// layer cost already reaches k. Returns nullopt when some table empties
// (no matching satisfies the bound). Requires generational inputs with a
// fully labeled youngest generation and equal per-generation gender counts.
std::optional<DistanceReport> dp_bounded(const Pedigree& p, const Pedigree& q, int k,
                                         DpStats* stats = nullptr);

// Heuristic variant: instead of all matchings within a cost bound, each
// table entry expands only the `gamma` highest-overlap layer matchings
// (combined from the per-gender k-best assignment lists). The result is an
// upper bound on the edit distance; with gamma large enough it degenerates
// to the exhaustive generation-preserving optimum.
DistanceReport dp_gamma_heuristic(const Pedigree& p, const Pedigree& q, int gamma);

}  // namespace pedcmp
