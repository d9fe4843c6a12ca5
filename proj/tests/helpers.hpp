#pragma once

// Shared fixtures and independent oracles for the test suites. Oracles here
// are deliberately naive (exhaustive enumeration) and share no code with the
// solvers they check.

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "doctest.h"
#include "pedcmp/assignment.hpp"
#include "pedcmp/matching.hpp"
#include "pedcmp/ped_io.hpp"
#include "pedcmp/pedigree.hpp"
#include "pedcmp/rng.hpp"

namespace pedtest {

using namespace pedcmp;

inline Pedigree ped(const std::string& text) { return pedigree_from_text(text); }

// Ten individuals: a founder couple, four children, two grandchildren from a
// full-sibling mating, and two great-grandchildren from the grandchildren.
// Fully labeled.
inline Pedigree example_pedigree() {
  return ped(
      "gf 0 0 1 1\n"
      "gm 0 0 2 2\n"
      "c1 gf gm 1 3\n"
      "c2 gf gm 2 4\n"
      "c3 gf gm 1 5\n"
      "c4 gf gm 2 6\n"
      "g1 c1 c2 1 7\n"
      "g2 c1 c2 2 8\n"
      "gg1 g1 g2 1 9\n"
      "gg2 g1 g2 2 10\n");
}

// Exhaustive maximum-weight assignment value (all n! permutations).
inline int64_t exhaustive_best_weight(const WeightMatrix& w) {
  std::vector<int> perm(w.n);
  std::iota(perm.begin(), perm.end(), 0);
  int64_t best = 0;
  bool first = true;
  do {
    int64_t total = 0;
    for (int r = 0; r < w.n; ++r) total += w.at(r, perm[r]);
    if (first || total > best) best = total;
    first = false;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// All permutations sorted by (weight desc, permutation lex asc).
inline std::vector<Assignment> exhaustive_all_assignments(const WeightMatrix& w) {
  std::vector<int> perm(w.n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Assignment> all;
  do {
    Assignment a;
    a.col_of_row = perm;
    for (int r = 0; r < w.n; ++r) a.total_weight += w.at(r, perm[r]);
    all.push_back(std::move(a));
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::stable_sort(all.begin(), all.end(), [](const Assignment& a, const Assignment& b) {
    if (a.total_weight != b.total_weight) return a.total_weight > b.total_weight;
    return a.col_of_row < b.col_of_row;
  });
  return all;
}

// Exhaustive edit distance: minimum match distance over every injective
// gender- and label-respecting partial map. Only for tiny graphs.
inline int exhaustive_edit_distance(const MatchGraph& g, const MatchGraph& h) {
  auto forced = forced_matching(g, h);
  REQUIRE(forced.has_value());
  std::vector<char> used(h.n, 0);
  for (int t : forced->target)
    if (t >= 0) used[t] = 1;

  Matching m = *forced;
  int best = g.edge_count + h.edge_count;
  auto recurse = [&](auto&& self, int v) -> void {
    if (v == g.n) {
      best = std::min(best, match_distance(g, h, m));
      return;
    }
    if (m.target[v] >= 0) {  // forced
      self(self, v + 1);
      return;
    }
    self(self, v + 1);  // leave unmatched
    for (int w = 0; w < h.n; ++w) {
      if (used[w] || h.gender[w] != g.gender[v]) continue;
      used[w] = 1;
      m.target[v] = w;
      self(self, v + 1);
      m.target[v] = -1;
      used[w] = 0;
    }
  };
  recurse(recurse, 0);
  return best;
}

// Random valid pedigree on n individuals: genders random; each individual
// becomes a child of a random earlier opposite-gender couple when possible.
inline Pedigree random_pedigree(Rng& rng, int n, double child_prob = 0.6) {
  std::vector<PedRecord> records;
  std::vector<int> males, females;
  for (int v = 0; v < n; ++v) {
    PedRecord r;
    r.id = "v" + std::to_string(v);
    r.sex = rng.below(2) == 0 ? 1 : 2;
    r.father = r.mother = "0";
    if (!males.empty() && !females.empty() && rng.unit() < child_prob) {
      r.father = "v" + std::to_string(males[rng.below(males.size())]);
      r.mother = "v" + std::to_string(females[rng.below(females.size())]);
    }
    (r.sex == 1 ? males : females).push_back(v);
    records.push_back(std::move(r));
  }
  return Pedigree::validate(records);
}

// Applies an edit path to the source graph: removes the deletions, then adds
// the additions, materializing "+name" endpoints with the target's gender
// and label. The result should be isomorphic to the target graph.
inline MatchGraph apply_edit_path(const MatchGraph& g, const MatchGraph& h,
                                  const EditPath& path) {
  MatchGraph out = g;
  auto find_name = [&](const std::string& name) {
    for (int v = 0; v < out.n; ++v)
      if (out.name[v] == name) return v;
    return -1;
  };
  for (const auto& [a, b] : path.deletions) {
    const int u = find_name(a), v = find_name(b);
    REQUIRE(u >= 0);
    REQUIRE(v >= 0);
    auto& kids = out.children[u];
    kids.erase(std::find(kids.begin(), kids.end(), v));
    auto& pars = out.parents[v];
    pars.erase(std::find(pars.begin(), pars.end(), u));
    --out.edge_count;
  }
  auto materialize = [&](const std::string& name) {
    int v = find_name(name);
    if (v >= 0) return v;
    REQUIRE(name[0] == '+');
    const std::string h_name = name.substr(1);
    int w = -1;
    for (int i = 0; i < h.n; ++i)
      if (h.name[i] == h_name) w = i;
    REQUIRE(w >= 0);
    out.name.push_back(name);
    out.gender.push_back(h.gender[w]);
    out.label.push_back(h.label[w]);
    out.children.emplace_back();
    out.parents.emplace_back();
    return out.n++;
  };
  for (const auto& [a, b] : path.additions) {
    const int u = materialize(a), v = materialize(b);
    out.children[u].push_back(v);
    out.parents[v].push_back(u);
    ++out.edge_count;
  }
  return out;
}

// Edgeless unlabeled vertices cost nothing in this distance, so graphs are
// compared without them.
inline MatchGraph strip_isolated(const MatchGraph& g) {
  MatchGraph out;
  std::vector<int> remap(g.n, -1);
  for (int v = 0; v < g.n; ++v) {
    if (g.children[v].empty() && g.parents[v].empty() && g.label[v] == 0) continue;
    remap[v] = out.n++;
    out.gender.push_back(g.gender[v]);
    out.label.push_back(g.label[v]);
    out.name.push_back(g.name[v]);
  }
  out.children.resize(out.n);
  out.parents.resize(out.n);
  for (int v = 0; v < g.n; ++v) {
    if (remap[v] < 0) continue;
    for (int c : g.children[v]) out.children[remap[v]].push_back(remap[c]);
    for (int u : g.parents[v]) out.parents[remap[v]].push_back(remap[u]);
  }
  out.edge_count = g.edge_count;
  return out;
}

}  // namespace pedtest
