#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pedcmp/pedigree.hpp"

namespace pedcmp {

// Plain gendered, partially labeled digraph view. All distance and
// isomorphism solvers run on this representation; pedigrees convert into it,
// and so do the rooted trees used by the structured test instances (which
// are not valid pedigrees themselves).
struct MatchGraph {
  int n = 0;
  std::vector<Gender> gender;
  std::vector<uint64_t> label;  // 0 = unlabeled
  std::vector<std::vector<int>> children;
  std::vector<std::vector<int>> parents;
  std::vector<std::string> name;
  int edge_count = 0;

  static MatchGraph of(const Pedigree& p);

  bool has_edge(int parent, int child) const {
    for (int c : children[parent])
      if (c == child) return true;
    return false;
  }
  std::vector<std::pair<int, int>> edges() const;
};

// Injective partial map from individuals of a source graph to individuals of
// a target graph; -1 = unmatched. Valid matchings preserve gender and map
// equal shared labels onto each other.
struct Matching {
  std::vector<int> target;

  int size_matched() const {
    int k = 0;
    for (int t : target) k += (t >= 0);
    return k;
  }
};

bool is_valid_matching(const MatchGraph& g, const MatchGraph& h, const Matching& m);

// The pairs forced by shared labels. nullopt when a shared label sits on
// individuals of different genders (then no valid matching exists at all).
std::optional<Matching> forced_matching(const MatchGraph& g, const MatchGraph& h);

// Edges (u,v) of g with both endpoints matched and (m(u),m(v)) an edge of h.
std::vector<std::pair<int, int>> well_matched_edges(const MatchGraph& g,
                                                    const MatchGraph& h,
                                                    const Matching& m);

// |E(g)| + |E(h)| - 2*|well-matched|: the number of edge deletions plus
// insertions that the matching certifies.
int match_distance(const MatchGraph& g, const MatchGraph& h, const Matching& m);

// The certified edit script. Deleted edges are named on the source side;
// added edges use source names where the endpoints are matched and
// "+<target-name>" for individuals with no counterpart.
struct EditPath {
  std::vector<std::pair<std::string, std::string>> deletions;
  std::vector<std::pair<std::string, std::string>> additions;
};

EditPath edit_path(const MatchGraph& g, const MatchGraph& h, const Matching& m);

struct DistanceReport {
  int distance = 0;
  Matching matching;
  std::vector<std::pair<int, int>> well_matched;
  EditPath path;
  std::string algorithm;
  std::map<std::string, std::string> params;
  double elapsed_ms = 0.0;
};

// Fills well_matched / path / distance of a report from its matching.
DistanceReport make_report(const MatchGraph& g, const MatchGraph& h, Matching m,
                           std::string algorithm,
                           std::map<std::string, std::string> params = {});

// Pedigree-level conveniences.
std::vector<std::pair<int, int>> well_matched_edges(const Pedigree& p,
                                                    const Pedigree& q,
                                                    const Matching& m);
int match_distance(const Pedigree& p, const Pedigree& q, const Matching& m);
EditPath edit_path(const Pedigree& p, const Pedigree& q, const Matching& m);

}  // namespace pedcmp
