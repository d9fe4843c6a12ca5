#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pedcmp/errors.hpp"
#include "pedcmp/matching.hpp"
#include "pedcmp/pedigree.hpp"

namespace pedcmp {

// Two-sided bipartite graph with fixed sides; vertices are 0-based per side.
struct BipartiteGraph {
  int left = 0;
  int right = 0;
  std::vector<std::pair<int, int>> edges;  // (left vertex, right vertex)
};

// Rooted directed tree, parent[] form; parent[root] = -1.
struct Tree {
  std::vector<int> parent;
  int node_count() const { return static_cast<int>(parent.size()); }
  int edge_count() const { return node_count() - 1; }
};

// Encodes a bipartite graph as an unlabeled pedigree: each left vertex u
// becomes a founder couple; each edge (u,v) gives that couple a son and a
// daughter tagged by the edge; and for every pair of edges (u,v), (u',v)
// meeting the same right vertex, the son of (u,v) and the daughter of
// (u',v) get a common daughter. Side-respecting graph isomorphism is then
// equivalent to pedigree isomorphism. Graphs with isolated vertices are
// rejected (their structure would leave no trace).
Pedigree bipartite_to_pedigree(const BipartiteGraph& g);

// Brute-force side-respecting bipartite isomorphism (test oracle).
bool bipartite_isomorphic(const BipartiteGraph& a, const BipartiteGraph& b);

// Trees whose root sprouts one path per multiset element, of that length.
// Minimum-common-integer-partition instances map to cut/paste distance
// between these trees.
std::pair<Tree, Tree> mcip_to_trees(const std::vector<uint64_t>& s1,
                                    const std::vector<uint64_t>& s2);

// View of a tree as an unlabeled all-female digraph for the edit-distance
// solvers (a tree is not a valid pedigree: in-degree 1).
MatchGraph tree_graph(const Tree& t);

// Monogamous-pedigree form of a tree: every node female, every non-leaf
// gains a founding male mate, every tree edge becomes a two-parent child
// relation. Exactly doubles the edge count.
Pedigree tree_to_monogamous_pedigree(const Tree& t);

// Builds compatibly leaf-labeled pedigrees (Q, Q') from two unlabeled ones:
// every individual of p gains an opposite-gender founder mate plus one leaf
// child per individual of q (and symmetrically for q), and the two leaf
// families are labeled consistently with each other, the p-side by a seeded
// shuffle. The edit distance of (Q, Q') differs from that of (p, q) by
// exactly 4 * (|I(p)|*|I(q)| - min(|I(p)|, |I(q)|)).
std::pair<Pedigree, Pedigree> leaf_label_gadget(const Pedigree& p, const Pedigree& q,
                                                uint64_t label_seed);

}  // namespace pedcmp
