#include "pedcmp/random_heuristic.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <numeric>
#include <unordered_map>

#include "pedcmp/rng.hpp"

namespace pedcmp {

namespace {

// Per-individual bitset of labels reachable through strict descendants.
std::vector<std::vector<uint64_t>> label_splits(
    const Pedigree& p, const std::unordered_map<uint64_t, int>& label_bit,
    int words) {
  const int n = p.size();
  std::vector<std::vector<uint64_t>> bits(n, std::vector<uint64_t>(words, 0));
  // children-first accumulation
  std::vector<int> outdeg(n), stack;
  for (int v = 0; v < n; ++v) {
    outdeg[v] = static_cast<int>(p.children(v).size());
    if (outdeg[v] == 0) stack.push_back(v);
  }
  std::vector<int> order;
  order.reserve(n);
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (int u : {p.father(v), p.mother(v)})
      if (u >= 0 && --outdeg[u] == 0) stack.push_back(u);
  }
  for (int v : order) {
    for (int c : p.children(v)) {
      auto it = label_bit.find(p.label(c));
      if (p.label(c) != 0 && it != label_bit.end())
        bits[v][it->second / 64] |= uint64_t{1} << (it->second % 64);
      for (int w = 0; w < words; ++w) bits[v][w] |= bits[c][w];
    }
  }
  return bits;
}

int overlap(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b) {
  int count = 0;
  for (size_t w = 0; w < a.size(); ++w)
    count += __builtin_popcountll(a[w] & b[w]);
  return count;
}

}  // namespace

DistanceReport random_matching(const Pedigree& p, const Pedigree& q, int trials,
                               uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  if (trials < 1) throw PreconditionError("random matching requires trials >= 1");
  const MatchGraph g = MatchGraph::of(p), h = MatchGraph::of(q);

  auto forced = forced_matching(g, h);
  if (!forced)
    throw PreconditionError("a shared label sits on individuals of different genders");
  auto gm_p = generation_map(p), gm_q = generation_map(q);
  if (!gm_p || !gm_q)
    throw PreconditionError("random matching requires generational pedigrees");

  // Shared-label bit positions drive the overlap weights.
  std::unordered_map<uint64_t, int> label_bit;
  for (int v = 0; v < p.size(); ++v) {
    if (p.label(v) == 0 || !q.individual_with_label(p.label(v))) continue;
    const int bit = static_cast<int>(label_bit.size());
    label_bit.emplace(p.label(v), bit);
  }
  const int words = std::max<int>(1, (static_cast<int>(label_bit.size()) + 63) / 64);
  const auto split_p = label_splits(p, label_bit, words);
  const auto split_q = label_splits(q, label_bit, words);

  std::vector<char> forced_image(q.size(), 0);
  for (int v = 0; v < p.size(); ++v)
    if (forced->target[v] >= 0) forced_image[forced->target[v]] = 1;

  // Free individuals per (generation, gender) on both sides.
  const int gens = std::max(gm_p->max_generation, gm_q->max_generation);
  std::vector<std::array<std::vector<int>, 2>> free_p(gens), free_q(gens);
  for (int v = 0; v < p.size(); ++v)
    if (forced->target[v] < 0)
      free_p[gm_p->generation[v] - 1][p.gender(v) == Gender::Male ? 0 : 1].push_back(v);
  for (int w = 0; w < q.size(); ++w)
    if (!forced_image[w])
      free_q[gm_q->generation[w] - 1][q.gender(w) == Gender::Male ? 0 : 1].push_back(w);

  Rng master(seed);
  Matching best;
  int best_distance = -1;

  for (int trial = 0; trial < trials; ++trial) {
    Rng rng = master.split(trial);
    Matching m = *forced;

    // Youngest generation first, then upward.
    for (int gen = gens - 1; gen >= 0; --gen) {
      for (int s = 0; s < 2; ++s) {
        const auto& rows = free_p[gen][s];
        const auto& cols = free_q[gen][s];
        if (rows.empty() || cols.empty()) continue;
        const size_t side = std::max(rows.size(), cols.size());

        std::vector<int> row_order(side);
        std::iota(row_order.begin(), row_order.end(), 0);
        rng.shuffle(row_order);
        std::vector<char> col_used(side, 0);

        for (int r : row_order) {
          // Dummy rows (r beyond rows.size()) burn one column draw so that
          // real columns can stay unmatched when sides are uneven.
          std::vector<size_t> open;
          for (size_t c = 0; c < side; ++c)
            if (!col_used[c]) open.push_back(c);
          // +1 smoothing keeps the draw well-defined on all-zero overlaps.
          std::vector<uint64_t> weight(open.size(), 1);
          if (static_cast<size_t>(r) < rows.size()) {
            for (size_t k = 0; k < open.size(); ++k)
              if (open[k] < cols.size())
                weight[k] += overlap(split_p[rows[r]], split_q[cols[open[k]]]);
          }
          uint64_t total = std::accumulate(weight.begin(), weight.end(), uint64_t{0});
          uint64_t draw = rng.below(total);
          size_t pick = 0;
          while (draw >= weight[pick]) {
            draw -= weight[pick];
            ++pick;
          }
          const size_t c = open[pick];
          col_used[c] = 1;
          if (static_cast<size_t>(r) < rows.size() && c < cols.size())
            m.target[rows[r]] = cols[c];
        }
      }
    }

    const int d = match_distance(g, h, m);
    if (best_distance < 0 || d < best_distance) {
      best_distance = d;
      best = std::move(m);
    }
  }

  DistanceReport report = make_report(g, h, std::move(best), "random",
                                      {{"trials", std::to_string(trials)},
                                       {"seed", std::to_string(seed)}});
  report.elapsed_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
  return report;
}

}  // namespace pedcmp
