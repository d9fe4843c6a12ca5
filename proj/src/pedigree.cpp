#include "pedcmp/pedigree.hpp"

#include <algorithm>
#include <deque>
#include <queue>
#include <set>

namespace pedcmp {

namespace {

[[noreturn]] void fail(PedigreeErrorCode code, const std::string& msg) {
  throw PedigreeError(code, msg);
}

}  // namespace

Pedigree Pedigree::validate(const std::vector<PedRecord>& records) {
  Pedigree p;
  const int n = static_cast<int>(records.size());
  p.ids_.reserve(n);
  p.genders_.reserve(n);
  p.labels_.reserve(n);

  for (const PedRecord& r : records) {
    if (r.id.empty() || r.id == "0")
      fail(PedigreeErrorCode::BadRecord, "invalid individual id '" + r.id + "'");
    if (r.sex != 1 && r.sex != 2)
      fail(PedigreeErrorCode::BadRecord,
           "individual '" + r.id + "' has sex " + std::to_string(r.sex) +
               ", expected 1 or 2");
    if (!p.index_.emplace(r.id, static_cast<int>(p.ids_.size())).second)
      fail(PedigreeErrorCode::DuplicateId, "duplicate individual id '" + r.id + "'");
    p.ids_.push_back(r.id);
    p.genders_.push_back(r.sex == 1 ? Gender::Male : Gender::Female);
    p.labels_.push_back(r.label);
  }

  p.fathers_.assign(n, -1);
  p.mothers_.assign(n, -1);
  p.children_.assign(n, {});

  for (int v = 0; v < n; ++v) {
    const PedRecord& r = records[v];
    const bool has_father = r.father != "0";
    const bool has_mother = r.mother != "0";
    if (has_father != has_mother)
      fail(PedigreeErrorCode::BadInDegree,
           "individual '" + r.id + "' has exactly one parent");
    if (!has_father) continue;

    auto fit = p.index_.find(r.father);
    if (fit == p.index_.end())
      fail(PedigreeErrorCode::DanglingEdge,
           "parent '" + r.father + "' of '" + r.id + "' is not defined");
    auto mit = p.index_.find(r.mother);
    if (mit == p.index_.end())
      fail(PedigreeErrorCode::DanglingEdge,
           "parent '" + r.mother + "' of '" + r.id + "' is not defined");
    int a = fit->second, b = mit->second;
    if (a == v || b == v)
      fail(PedigreeErrorCode::CycleDetected,
           "individual '" + r.id + "' is its own parent");
    if (a == b)
      fail(PedigreeErrorCode::SameGenderParents,
           "individual '" + r.id + "' lists the same parent twice");
    if (p.genders_[a] == p.genders_[b])
      fail(PedigreeErrorCode::SameGenderParents,
           "parents of '" + r.id + "' have the same gender");
    // Normalize: father_ holds the male parent.
    if (p.genders_[a] != Gender::Male) std::swap(a, b);
    p.fathers_[v] = a;
    p.mothers_[v] = b;
  }

  // Label injectivity.
  for (int v = 0; v < n; ++v) {
    if (p.labels_[v] == 0) continue;
    if (!p.by_label_.emplace(p.labels_[v], v).second)
      fail(PedigreeErrorCode::DuplicateLabel,
           "label " + std::to_string(p.labels_[v]) + " appears more than once");
  }

  // Acyclicity (Kahn). In-degree is 0 or 2 by construction here.
  std::vector<int> indeg(n, 0), order;
  order.reserve(n);
  for (int v = 0; v < n; ++v)
    if (p.fathers_[v] >= 0) indeg[v] = 2;
  std::deque<int> ready;
  for (int v = 0; v < n; ++v)
    if (indeg[v] == 0) ready.push_back(v);
  std::vector<std::vector<int>> kids(n);
  for (int v = 0; v < n; ++v) {
    if (p.fathers_[v] < 0) continue;
    kids[p.fathers_[v]].push_back(v);
    kids[p.mothers_[v]].push_back(v);
  }
  while (!ready.empty()) {
    int v = ready.front();
    ready.pop_front();
    order.push_back(v);
    for (int c : kids[v])
      if (--indeg[c] == 0) ready.push_back(c);
  }
  if (static_cast<int>(order.size()) != n)
    fail(PedigreeErrorCode::CycleDetected, "parent-child relation contains a cycle");

  for (int v = 0; v < n; ++v) {
    if (p.fathers_[v] < 0) continue;
    p.children_[p.fathers_[v]].push_back(v);
    p.children_[p.mothers_[v]].push_back(v);
    p.edge_count_ += 2;
  }
  p.out_degree_.resize(n);
  for (int v = 0; v < n; ++v)
    p.out_degree_[v] = static_cast<int>(p.children_[v].size());
  return p;
}

std::vector<std::pair<int, int>> Pedigree::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(edge_count_);
  for (int v = 0; v < size(); ++v) {
    if (fathers_[v] < 0) continue;
    out.emplace_back(fathers_[v], v);
    out.emplace_back(mothers_[v], v);
  }
  return out;
}

std::vector<int> Pedigree::labeled_individuals() const {
  std::vector<int> out;
  for (int v = 0; v < size(); ++v)
    if (labels_[v] != 0) out.push_back(v);
  return out;
}

std::vector<PedRecord> Pedigree::to_records() const {
  std::vector<PedRecord> out;
  out.reserve(size());
  for (int v = 0; v < size(); ++v) {
    PedRecord r;
    r.id = ids_[v];
    r.father = fathers_[v] < 0 ? "0" : ids_[fathers_[v]];
    r.mother = mothers_[v] < 0 ? "0" : ids_[mothers_[v]];
    r.sex = genders_[v] == Gender::Male ? 1 : 2;
    r.label = labels_[v];
    out.push_back(std::move(r));
  }
  return out;
}

std::optional<GenerationMap> generation_map(const Pedigree& p) {
  const int n = p.size();
  GenerationMap gm;
  gm.generation.assign(n, 0);
  std::vector<int> tentative(n, 0);
  std::vector<char> seen(n, 0);

  for (int start = 0; start < n; ++start) {
    if (seen[start]) continue;
    // Propagate relative generations over the component: child = parent + 1.
    std::vector<int> component;
    std::deque<int> queue{start};
    seen[start] = 1;
    tentative[start] = 0;
    int lo = 0;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      component.push_back(v);
      lo = std::min(lo, tentative[v]);
      auto relax = [&](int u, int value) {
        if (u < 0) return true;
        if (!seen[u]) {
          seen[u] = 1;
          tentative[u] = value;
          queue.push_back(u);
          return true;
        }
        return tentative[u] == value;
      };
      if (!relax(p.father(v), tentative[v] - 1)) return std::nullopt;
      if (!relax(p.mother(v), tentative[v] - 1)) return std::nullopt;
      for (int c : p.children(v))
        if (!relax(c, tentative[v] + 1)) return std::nullopt;
    }
    for (int v : component) {
      gm.generation[v] = tentative[v] - lo + 1;
      gm.max_generation = std::max(gm.max_generation, gm.generation[v]);
    }
  }
  return gm;
}

bool is_monogamous(const Pedigree& p) {
  std::vector<int> mate(p.size(), -1);
  for (int v = 0; v < p.size(); ++v) {
    if (p.is_founder(v)) continue;
    const int f = p.father(v), m = p.mother(v);
    if (mate[f] != -1 && mate[f] != m) return false;
    if (mate[m] != -1 && mate[m] != f) return false;
    mate[f] = m;
    mate[m] = f;
  }
  return true;
}

std::vector<int> leaf_individuals(const Pedigree& p) {
  std::vector<int> out;
  for (int v = 0; v < p.size(); ++v)
    if (p.is_leaf(v)) out.push_back(v);
  return out;
}

bool is_leaf_labeled(const Pedigree& p) {
  for (int v = 0; v < p.size(); ++v)
    if ((p.label(v) != 0) != p.is_leaf(v)) return false;
  return true;
}

bool compatibly_leaf_labeled(const Pedigree& p, const Pedigree& q) {
  if (!is_leaf_labeled(p) || !is_leaf_labeled(q)) return false;
  // Labels are injective per side, so the leaf (label, gender) multisets
  // coincide iff their sorted forms are equal. Sorting beats per-leaf hash
  // probes on large pedigrees.
  auto keys = [](const Pedigree& x) {
    std::vector<std::pair<uint64_t, Gender>> out;
    for (int v = 0; v < x.size(); ++v)
      if (x.label(v) != 0) out.emplace_back(x.label(v), x.gender(v));
    std::sort(out.begin(), out.end());
    return out;
  };
  return keys(p) == keys(q);
}

bool labels_compatible(const Pedigree& p, const Pedigree& q) {
  for (int v : p.labeled_individuals()) {
    auto w = q.individual_with_label(p.label(v));
    if (w && q.gender(*w) != p.gender(v)) return false;
  }
  return true;
}

Pedigree prune_to_labeled_ancestry(const Pedigree& p) {
  std::vector<char> keep(p.size(), 0);
  std::vector<int> stack;
  for (int v : p.labeled_individuals()) {
    stack.push_back(v);
    keep[v] = 1;
  }
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int u : {p.father(v), p.mother(v)}) {
      if (u >= 0 && !keep[u]) {
        keep[u] = 1;
        stack.push_back(u);
      }
    }
  }
  std::vector<int> kept;
  for (int v = 0; v < p.size(); ++v)
    if (keep[v]) kept.push_back(v);
  return sub_pedigree(p, kept);
}

Pedigree sub_pedigree(const Pedigree& p, const std::vector<int>& individuals) {
  std::vector<char> keep(p.size(), 0);
  for (int v : individuals) keep[v] = 1;
  std::vector<PedRecord> records;
  for (int v = 0; v < p.size(); ++v) {
    if (!keep[v]) continue;
    PedRecord r;
    r.id = p.id(v);
    r.sex = p.gender(v) == Gender::Male ? 1 : 2;
    r.label = p.label(v);
    const bool kf = p.father(v) >= 0 && keep[p.father(v)];
    const bool km = p.mother(v) >= 0 && keep[p.mother(v)];
    if (kf != km)
      throw PedigreeError(PedigreeErrorCode::BadInDegree,
                          "subset keeps exactly one parent of '" + p.id(v) + "'");
    r.father = kf ? p.id(p.father(v)) : "0";
    r.mother = km ? p.id(p.mother(v)) : "0";
    records.push_back(std::move(r));
  }
  return Pedigree::validate(records);
}

Pedigree sub_pedigree_edges(const Pedigree& p,
                            const std::vector<std::pair<int, int>>& edges) {
  std::set<int> vs;
  for (const auto& [a, b] : edges) {
    vs.insert(a);
    vs.insert(b);
  }
  return sub_pedigree(p, std::vector<int>(vs.begin(), vs.end()));
}

std::vector<std::vector<int>> descendant_splits(const Pedigree& p) {
  const int n = p.size();
  // Reverse topological accumulation: children before parents.
  std::vector<int> order;
  order.reserve(n);
  std::vector<int> outdeg(n, 0);
  std::deque<int> ready;
  for (int v = 0; v < n; ++v) {
    outdeg[v] = static_cast<int>(p.children(v).size());
    if (outdeg[v] == 0) ready.push_back(v);
  }
  while (!ready.empty()) {
    int v = ready.front();
    ready.pop_front();
    order.push_back(v);
    for (int u : {p.father(v), p.mother(v)})
      if (u >= 0 && --outdeg[u] == 0) ready.push_back(u);
  }

  std::vector<std::set<int>> acc(n);
  for (int v : order) {
    for (int c : p.children(v)) {
      acc[v].insert(c);
      acc[v].insert(acc[c].begin(), acc[c].end());
    }
  }
  std::vector<std::vector<int>> out(n);
  for (int v = 0; v < n; ++v) out[v].assign(acc[v].begin(), acc[v].end());
  return out;
}

}  // namespace pedcmp
