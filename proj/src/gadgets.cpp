#include "pedcmp/gadgets.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "pedcmp/rng.hpp"

namespace pedcmp {

Pedigree bipartite_to_pedigree(const BipartiteGraph& g) {
  std::vector<char> left_used(g.left, 0), right_used(g.right, 0);
  for (const auto& [u, v] : g.edges) {
    left_used[u] = 1;
    right_used[v] = 1;
  }
  for (int u = 0; u < g.left; ++u)
    if (!left_used[u])
      throw PreconditionError("bipartite gadget: isolated left vertex " +
                              std::to_string(u));
  for (int v = 0; v < g.right; ++v)
    if (!right_used[v])
      throw PreconditionError("bipartite gadget: isolated right vertex " +
                              std::to_string(v));

  auto left_name = [](int u, char s) { return "L" + std::to_string(u) + "." + s; };
  auto edge_name = [](int u, int v, char s) {
    return "e" + std::to_string(u) + "," + std::to_string(v) + "." + s;
  };

  std::vector<PedRecord> records;
  for (int u = 0; u < g.left; ++u) {
    records.push_back({left_name(u, 'm'), "0", "0", 1, 0});
    records.push_back({left_name(u, 'f'), "0", "0", 2, 0});
  }
  for (const auto& [u, v] : g.edges) {
    records.push_back({edge_name(u, v, 'm'), left_name(u, 'm'), left_name(u, 'f'), 1, 0});
    records.push_back({edge_name(u, v, 'f'), left_name(u, 'm'), left_name(u, 'f'), 2, 0});
  }
  // Couple every son of an edge into v with every daughter of an edge into
  // v, including the edge's own pair; the common daughters tie together all
  // edges meeting the same right vertex.
  for (const auto& [u, v] : g.edges) {
    for (const auto& [u2, v2] : g.edges) {
      if (v2 != v) continue;
      records.push_back({"t" + std::to_string(u) + "," + std::to_string(u2) + "," +
                             std::to_string(v) + ".f",
                         edge_name(u, v, 'm'), edge_name(u2, v, 'f'), 2, 0});
    }
  }
  return Pedigree::validate(records);
}

bool bipartite_isomorphic(const BipartiteGraph& a, const BipartiteGraph& b) {
  if (a.left != b.left || a.right != b.right || a.edges.size() != b.edges.size())
    return false;
  std::vector<char> adj_a(size_t(a.left) * a.right, 0), adj_b(adj_a.size(), 0);
  for (const auto& [u, v] : a.edges) adj_a[size_t(u) * a.right + v] = 1;
  for (const auto& [u, v] : b.edges) adj_b[size_t(u) * b.right + v] = 1;

  std::vector<int> lperm(a.left), rperm(a.right);
  std::iota(lperm.begin(), lperm.end(), 0);
  do {
    std::iota(rperm.begin(), rperm.end(), 0);
    do {
      bool match = true;
      for (int u = 0; u < a.left && match; ++u)
        for (int v = 0; v < a.right && match; ++v)
          match = adj_a[size_t(u) * a.right + v] ==
                  adj_b[size_t(lperm[u]) * b.right + rperm[v]];
      if (match) return true;
    } while (std::next_permutation(rperm.begin(), rperm.end()));
  } while (std::next_permutation(lperm.begin(), lperm.end()));
  return false;
}

std::pair<Tree, Tree> mcip_to_trees(const std::vector<uint64_t>& s1,
                                    const std::vector<uint64_t>& s2) {
  auto build = [](const std::vector<uint64_t>& s) {
    if (s.empty()) throw PreconditionError("integer multiset must be non-empty");
    Tree t;
    t.parent.push_back(-1);  // root = node 0
    for (uint64_t n : s) {
      if (n < 1) throw PreconditionError("multiset elements must be >= 1");
      int prev = 0;
      for (uint64_t step = 0; step < n; ++step) {
        t.parent.push_back(prev);
        prev = t.node_count() - 1;
      }
    }
    return t;
  };
  return {build(s1), build(s2)};
}

MatchGraph tree_graph(const Tree& t) {
  MatchGraph g;
  g.n = t.node_count();
  g.gender.assign(g.n, Gender::Female);
  g.label.assign(g.n, 0);
  g.children.resize(g.n);
  g.parents.resize(g.n);
  g.name.resize(g.n);
  for (int v = 0; v < g.n; ++v) {
    g.name[v] = "n" + std::to_string(v);
    if (t.parent[v] >= 0) {
      g.children[t.parent[v]].push_back(v);
      g.parents[v].push_back(t.parent[v]);
      ++g.edge_count;
    }
  }
  return g;
}

Pedigree tree_to_monogamous_pedigree(const Tree& t) {
  const int n = t.node_count();
  std::vector<char> is_leaf(n, 1);
  for (int v = 0; v < n; ++v)
    if (t.parent[v] >= 0) is_leaf[t.parent[v]] = 0;

  auto node_name = [](int v) { return "n" + std::to_string(v); };
  auto mate_name = [](int v) { return "n" + std::to_string(v) + "m"; };

  std::vector<PedRecord> records;
  for (int v = 0; v < n; ++v) {
    const int parent = t.parent[v];
    PedRecord r{node_name(v), "0", "0", 2, 0};
    if (parent >= 0) {
      r.father = mate_name(parent);
      r.mother = node_name(parent);
    }
    records.push_back(r);
    if (!is_leaf[v]) records.push_back({mate_name(v), "0", "0", 1, 0});
  }
  return Pedigree::validate(records);
}

std::pair<Pedigree, Pedigree> leaf_label_gadget(const Pedigree& p, const Pedigree& q,
                                                uint64_t label_seed) {
  const int np = p.size(), nq = q.size();

  // Label layout: leaf (u of p, v of q) carries labels[u*nq + v] on both
  // sides, assigned by a seeded shuffle of 1..np*nq.
  std::vector<uint64_t> labels(size_t(np) * nq);
  std::iota(labels.begin(), labels.end(), uint64_t{1});
  Rng rng(label_seed);
  rng.shuffle(labels);

  auto build = [&](const Pedigree& base, const Pedigree& other, const char* tag,
                   bool transpose) {
    std::vector<PedRecord> records;
    for (const PedRecord& r : base.to_records()) {
      PedRecord copy = r;
      copy.label = 0;  // source pedigrees enter the gadget unlabeled
      records.push_back(copy);
    }
    for (int u = 0; u < base.size(); ++u) {
      const bool male = base.gender(u) == Gender::Male;
      records.push_back({base.id(u) + tag, "0", "0", male ? 2 : 1, 0});
      for (int v = 0; v < other.size(); ++v) {
        PedRecord leaf;
        leaf.id = base.id(u) + ":" + other.id(v);
        leaf.father = male ? base.id(u) : base.id(u) + tag;
        leaf.mother = male ? base.id(u) + tag : base.id(u);
        leaf.sex = 2;
        leaf.label = transpose ? labels[size_t(v) * nq + u] : labels[size_t(u) * nq + v];
        records.push_back(leaf);
      }
    }
    return Pedigree::validate(records);
  };

  return {build(p, q, "'", false), build(q, p, "'", true)};
}

}  // namespace pedcmp
