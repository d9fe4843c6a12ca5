#pragma once

#include <optional>
#include <vector>

#include "pedcmp/errors.hpp"
#include "pedcmp/matching.hpp"
#include "pedcmp/pedigree.hpp"

namespace pedcmp {

// Total order over all individuals of a leaf-labeled pedigree, determined
// only by topology, genders and leaf labels: leaves are taken in ascending
// label order and each leaf's ancestry is emitted by a post-order DFS along
// child->parent edges that always visits the female parent before the male
// parent. Individuals finished by an earlier leaf's walk are skipped.
// Throws PreconditionError if the pedigree is not leaf-labeled.
std::vector<int> gender_topological_order(const Pedigree& p);

// Isomorphism test for compatibly leaf-labeled pedigrees, linear in
// |I| + |E|: any isomorphism must map the i-th element of one gender
// topological order to the i-th element of the other, so that single
// candidate map is built and verified. Throws PreconditionError when the
// inputs are not compatibly leaf-labeled.
std::optional<Matching> leaf_labeled_isomorphic(const Pedigree& p, const Pedigree& q);

// Exhaustive backtracking search for a gender- and label-respecting
// bijection that preserves edges exactly. Works on arbitrary gendered
// digraphs; the test oracle for the linear algorithm and for the structured
// instances. Throws TooLargeError above `cap` vertices.
std::optional<Matching> brute_force_isomorphic(const MatchGraph& g,
                                               const MatchGraph& h, int cap = 14);
std::optional<Matching> brute_force_isomorphic(const Pedigree& p, const Pedigree& q,
                                               int cap = 14);

}  // namespace pedcmp
