#include "pedcmp/matching.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace pedcmp {

MatchGraph MatchGraph::of(const Pedigree& p) {
  MatchGraph g;
  g.n = p.size();
  g.gender.resize(g.n);
  g.label.resize(g.n);
  g.children.resize(g.n);
  g.parents.resize(g.n);
  g.name.resize(g.n);
  for (int v = 0; v < g.n; ++v) {
    g.gender[v] = p.gender(v);
    g.label[v] = p.label(v);
    g.name[v] = p.id(v);
    g.children[v] = p.children(v);
    if (!p.is_founder(v)) {
      g.parents[v] = {p.father(v), p.mother(v)};
      g.edge_count += 2;
    }
  }
  return g;
}

std::vector<std::pair<int, int>> MatchGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(edge_count);
  for (int v = 0; v < n; ++v)
    for (int u : parents[v]) out.emplace_back(u, v);
  return out;
}

bool is_valid_matching(const MatchGraph& g, const MatchGraph& h, const Matching& m) {
  if (static_cast<int>(m.target.size()) != g.n) return false;
  std::vector<char> used(h.n, 0);
  for (int v = 0; v < g.n; ++v) {
    const int t = m.target[v];
    if (t < 0) continue;
    if (t >= h.n || used[t]) return false;
    used[t] = 1;
    if (g.gender[v] != h.gender[t]) return false;
  }
  // Shared labels must be paired with each other.
  std::unordered_map<uint64_t, int> h_label;
  for (int w = 0; w < h.n; ++w)
    if (h.label[w] != 0) h_label[h.label[w]] = w;
  for (int v = 0; v < g.n; ++v) {
    if (g.label[v] == 0) continue;
    auto it = h_label.find(g.label[v]);
    if (it == h_label.end()) continue;
    if (m.target[v] != it->second) return false;
  }
  return true;
}

std::optional<Matching> forced_matching(const MatchGraph& g, const MatchGraph& h) {
  Matching m;
  m.target.assign(g.n, -1);
  std::unordered_map<uint64_t, int> h_label;
  for (int w = 0; w < h.n; ++w)
    if (h.label[w] != 0) h_label[h.label[w]] = w;
  for (int v = 0; v < g.n; ++v) {
    if (g.label[v] == 0) continue;
    auto it = h_label.find(g.label[v]);
    if (it == h_label.end()) continue;
    if (g.gender[v] != h.gender[it->second]) return std::nullopt;
    m.target[v] = it->second;
  }
  return m;
}

std::vector<std::pair<int, int>> well_matched_edges(const MatchGraph& g,
                                                    const MatchGraph& h,
                                                    const Matching& m) {
  std::vector<std::pair<int, int>> out;
  for (int v = 0; v < g.n; ++v) {
    if (m.target[v] < 0) continue;
    for (int u : g.parents[v]) {
      if (m.target[u] < 0) continue;
      if (h.has_edge(m.target[u], m.target[v])) out.emplace_back(u, v);
    }
  }
  return out;
}

int match_distance(const MatchGraph& g, const MatchGraph& h, const Matching& m) {
  return g.edge_count + h.edge_count -
         2 * static_cast<int>(well_matched_edges(g, h, m).size());
}

EditPath edit_path(const MatchGraph& g, const MatchGraph& h, const Matching& m) {
  EditPath path;
  const auto well = well_matched_edges(g, h, m);
  auto encode = [](int n, int u, int v) { return uint64_t(u) * n + v; };
  std::unordered_set<uint64_t> well_g, covered_h;
  for (const auto& [u, v] : well) {
    well_g.insert(encode(g.n, u, v));
    covered_h.insert(encode(h.n, m.target[u], m.target[v]));
  }
  for (const auto& [u, v] : g.edges())
    if (!well_g.count(encode(g.n, u, v)))
      path.deletions.emplace_back(g.name[u], g.name[v]);

  std::vector<int> back(h.n, -1);
  for (int v = 0; v < g.n; ++v)
    if (m.target[v] >= 0) back[m.target[v]] = v;
  auto source_side_name = [&](int w) {
    return back[w] >= 0 ? g.name[back[w]] : "+" + h.name[w];
  };
  for (const auto& [u, v] : h.edges())
    if (!covered_h.count(encode(h.n, u, v)))
      path.additions.emplace_back(source_side_name(u), source_side_name(v));
  return path;
}

DistanceReport make_report(const MatchGraph& g, const MatchGraph& h, Matching m,
                           std::string algorithm,
                           std::map<std::string, std::string> params) {
  DistanceReport report;
  report.matching = std::move(m);
  report.well_matched = well_matched_edges(g, h, report.matching);
  report.distance =
      g.edge_count + h.edge_count - 2 * static_cast<int>(report.well_matched.size());
  report.path = edit_path(g, h, report.matching);
  report.algorithm = std::move(algorithm);
  report.params = std::move(params);
  return report;
}

std::vector<std::pair<int, int>> well_matched_edges(const Pedigree& p,
                                                    const Pedigree& q,
                                                    const Matching& m) {
  return well_matched_edges(MatchGraph::of(p), MatchGraph::of(q), m);
}

int match_distance(const Pedigree& p, const Pedigree& q, const Matching& m) {
  return match_distance(MatchGraph::of(p), MatchGraph::of(q), m);
}

EditPath edit_path(const Pedigree& p, const Pedigree& q, const Matching& m) {
  return edit_path(MatchGraph::of(p), MatchGraph::of(q), m);
}

}  // namespace pedcmp
