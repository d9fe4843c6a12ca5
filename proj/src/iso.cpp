#include "pedcmp/iso.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace pedcmp {

std::vector<int> gender_topological_order(const Pedigree& p) {
  if (!is_leaf_labeled(p))
    throw PreconditionError("gender topological order requires a leaf-labeled pedigree");

  std::vector<std::pair<uint64_t, int>> leaves;
  for (int v = 0; v < p.size(); ++v)
    if (p.is_leaf(v)) leaves.emplace_back(p.label(v), v);
  std::sort(leaves.begin(), leaves.end());

  std::vector<int> order;
  order.reserve(p.size());
  std::vector<char> finished(p.size(), 0);
  // Iterative post-order; (vertex, stage) with stage counting parents tried.
  std::vector<std::pair<int, int>> stack;
  for (const auto& [label, leaf] : leaves) {
    if (finished[leaf]) continue;
    stack.emplace_back(leaf, 0);
    while (!stack.empty()) {
      auto& [v, stage] = stack.back();
      if (stage == 0) {
        ++stage;
        const int mo = p.mother(v);  // female parent first
        if (mo >= 0 && !finished[mo]) {
          stack.emplace_back(mo, 0);
          continue;
        }
      }
      if (stage == 1) {
        ++stage;
        const int fa = p.father(v);
        if (fa >= 0 && !finished[fa]) {
          stack.emplace_back(fa, 0);
          continue;
        }
      }
      finished[v] = 1;
      order.push_back(v);
      stack.pop_back();
    }
  }
  return order;
}

std::optional<Matching> leaf_labeled_isomorphic(const Pedigree& p, const Pedigree& q) {
  if (!compatibly_leaf_labeled(p, q))
    throw PreconditionError("pedigrees are not compatibly leaf-labeled");
  if (p.size() != q.size() || p.edge_count() != q.edge_count()) return std::nullopt;

  const auto op = gender_topological_order(p);
  const auto oq = gender_topological_order(q);

  Matching m;
  m.target.assign(p.size(), -1);
  for (int i = 0; i < p.size(); ++i) m.target[op[i]] = oq[i];

  for (int v = 0; v < p.size(); ++v) {
    const int w = m.target[v];
    if (p.gender(v) != q.gender(w)) return std::nullopt;
    if (p.label(v) != q.label(w)) return std::nullopt;
    if (p.is_founder(v) != q.is_founder(w)) return std::nullopt;
    if (!p.is_founder(v)) {
      if (m.target[p.father(v)] != q.father(w)) return std::nullopt;
      if (m.target[p.mother(v)] != q.mother(w)) return std::nullopt;
    }
  }
  // Equal edge counts plus parent preservation give both edge directions.
  return m;
}

namespace {

struct IsoSignature {
  Gender gender;
  uint64_t label;
  int indeg, outdeg, depth, height;
  bool operator==(const IsoSignature&) const = default;
};

// depth = longest founder-to-v path, height = longest v-to-leaf path; both
// are isomorphism invariants and cheap candidate filters.
std::vector<IsoSignature> signatures(const MatchGraph& g) {
  const int n = g.n;
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  // Topological order by repeated relaxation (graphs here are small DAGs).
  std::vector<int> depth(n, 0), height(n, 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < n; ++v) {
      for (int c : g.children[v]) {
        if (depth[c] < depth[v] + 1) {
          depth[c] = depth[v] + 1;
          changed = true;
        }
        if (height[v] < height[c] + 1) {
          height[v] = height[c] + 1;
          changed = true;
        }
      }
    }
  }
  std::vector<IsoSignature> sig(n);
  for (int v = 0; v < n; ++v)
    sig[v] = {g.gender[v], g.label[v], static_cast<int>(g.parents[v].size()),
              static_cast<int>(g.children[v].size()), depth[v], height[v]};
  return sig;
}

struct IsoSearch {
  const MatchGraph& g;
  const MatchGraph& h;
  std::vector<IsoSignature> sig_g, sig_h;
  std::vector<int> map_gh, map_hg;
  std::vector<int> order;

  bool consistent(int v, int w) const {
    // Mapped neighbors must correspond in both directions.
    for (int u : g.parents[v]) {
      const int t = map_gh[u];
      if (t >= 0 && !h.has_edge(t, w)) return false;
    }
    for (int c : g.children[v]) {
      const int t = map_gh[c];
      if (t >= 0 && !h.has_edge(w, t)) return false;
    }
    for (int u : h.parents[w]) {
      const int s = map_hg[u];
      if (s >= 0 && !g.has_edge(s, v)) return false;
    }
    for (int c : h.children[w]) {
      const int s = map_hg[c];
      if (s >= 0 && !g.has_edge(v, s)) return false;
    }
    return true;
  }

  bool search(size_t k) {
    if (k == order.size()) return true;
    const int v = order[k];
    if (map_gh[v] >= 0) return search(k + 1);
    for (int w = 0; w < h.n; ++w) {
      if (map_hg[w] >= 0 || !(sig_g[v] == sig_h[w])) continue;
      if (!consistent(v, w)) continue;
      map_gh[v] = w;
      map_hg[w] = v;
      if (search(k + 1)) return true;
      map_gh[v] = -1;
      map_hg[w] = -1;
    }
    return false;
  }
};

}  // namespace

std::optional<Matching> brute_force_isomorphic(const MatchGraph& g,
                                               const MatchGraph& h, int cap) {
  if (g.n > cap || h.n > cap)
    throw TooLargeError("instance exceeds the exhaustive search cap of " +
                        std::to_string(cap));
  if (g.n != h.n || g.edge_count != h.edge_count) return std::nullopt;

  IsoSearch search{g, h, signatures(g), signatures(h), {}, {}, {}};
  // Invariant multisets must agree.
  {
    auto key = [](const IsoSignature& s) {
      return std::array<uint64_t, 6>{static_cast<uint64_t>(s.gender), s.label,
                                     static_cast<uint64_t>(s.indeg),
                                     static_cast<uint64_t>(s.outdeg),
                                     static_cast<uint64_t>(s.depth),
                                     static_cast<uint64_t>(s.height)};
    };
    std::vector<std::array<uint64_t, 6>> a, b;
    for (const auto& s : search.sig_g) a.push_back(key(s));
    for (const auto& s : search.sig_h) b.push_back(key(s));
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return std::nullopt;
  }

  search.map_gh.assign(g.n, -1);
  search.map_hg.assign(h.n, -1);

  // Labels shared by both sides are forced.
  auto forced = forced_matching(g, h);
  if (!forced) return std::nullopt;
  for (int v = 0; v < g.n; ++v) {
    const int w = forced->target[v];
    if (w < 0) continue;
    if (!(search.sig_g[v] == search.sig_h[w]) || !search.consistent(v, w))
      return std::nullopt;
    search.map_gh[v] = w;
    search.map_hg[w] = v;
  }

  // Most-constrained-first: few same-signature candidates first.
  search.order.resize(g.n);
  std::iota(search.order.begin(), search.order.end(), 0);
  std::vector<int> candidate_count(g.n, 0);
  for (int v = 0; v < g.n; ++v)
    for (int w = 0; w < h.n; ++w)
      candidate_count[v] += (search.sig_g[v] == search.sig_h[w]);
  std::stable_sort(search.order.begin(), search.order.end(),
                   [&](int a, int b) { return candidate_count[a] < candidate_count[b]; });

  if (!search.search(0)) return std::nullopt;
  Matching m;
  m.target = search.map_gh;
  return m;
}

std::optional<Matching> brute_force_isomorphic(const Pedigree& p, const Pedigree& q,
                                               int cap) {
  return brute_force_isomorphic(MatchGraph::of(p), MatchGraph::of(q), cap);
}

}  // namespace pedcmp
