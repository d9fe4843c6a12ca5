#include "pedcmp/distance.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <set>

#include "pedcmp/assignment.hpp"
#include "pedcmp/random_heuristic.hpp"

namespace pedcmp {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

int gender_slot(Gender g) { return g == Gender::Male ? 0 : 1; }

// ---------------------------------------------------------------------------
// Branch and bound
// ---------------------------------------------------------------------------

class BranchAndBound {
 public:
  BranchAndBound(const MatchGraph& g, const MatchGraph& h, const Matching& forced)
      : g_(g), h_(h), forced_(forced.target) {
    max_deg_ = 1;
    for (int v = 0; v < g_.n; ++v)
      max_deg_ = std::max(max_deg_, static_cast<int>(g_.children[v].size()));
    for (int w = 0; w < h_.n; ++w)
      max_deg_ = std::max(max_deg_, static_cast<int>(h_.children[w].size()));

    words_ = (h_.n + 63) / 64;
    child_bits_.assign(size_t(h_.n) * words_, 0);
    for (int w = 0; w < h_.n; ++w)
      for (int c : h_.children[w])
        child_bits_[size_t(w) * words_ + c / 64] |= uint64_t{1} << (c % 64);

    reserved_.assign(h_.n, 0);
    for (int v = 0; v < g_.n; ++v)
      if (forced_[v] >= 0) reserved_[forced_[v]] = 1;

    // Children-first order (LIFO so that chains unroll consecutively).
    std::vector<int> remaining(g_.n), stack;
    for (int v = 0; v < g_.n; ++v) {
      remaining[v] = static_cast<int>(g_.children[v].size());
      if (remaining[v] == 0) stack.push_back(v);
    }
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      order_.push_back(v);
      for (int u : g_.parents[v])
        if (--remaining[u] == 0) stack.push_back(u);
    }
  }

  // Finds any complete matching with at least w_req well-matched edges.
  std::optional<Matching> search(int w_req) {
    w_req_ = w_req;
    assign_.assign(g_.n, kUnassigned);
    used_.assign(h_.n, 0);
    cap_.assign(g_.n, 0);
    cap_count_[0].assign(max_deg_ + 1, 0);
    cap_count_[1].assign(max_deg_ + 1, 0);
    avail_count_[0].assign(max_deg_ + 1, 0);
    avail_count_[1].assign(max_deg_ + 1, 0);
    w_cur_ = 0;
    for (int v = 0; v < g_.n; ++v) {
      cap_[v] = static_cast<int>(g_.children[v].size());
      ++cap_count_[gender_slot(g_.gender[v])][cap_[v]];
    }
    for (int w = 0; w < h_.n; ++w)
      ++avail_count_[gender_slot(h_.gender[w])][h_.children[w].size()];

    if (!dfs(0)) return std::nullopt;
    Matching m;
    m.target.assign(g_.n, -1);
    for (int v = 0; v < g_.n; ++v)
      if (assign_[v] >= 0) m.target[v] = assign_[v];
    return m;
  }

 private:
  static constexpr int kUnassigned = -2;
  static constexpr int kNull = -1;

  bool has_child(int w, int c) const {
    return (child_bits_[size_t(w) * words_ + c / 64] >> (c % 64)) & 1;
  }

  int gain(int v, int w) const {
    int total = 0;
    for (int c : g_.children[v])
      if (assign_[c] >= 0 && has_child(w, assign_[c])) ++total;
    return total;
  }

  // Upper bound on future gains: per gender, pair the largest remaining
  // child-capacities with the largest available target out-degrees.
  int future_bound() const {
    int total = 0;
    for (int s = 0; s < 2; ++s) {
      int da = max_deg_, db = max_deg_;
      int na = cap_count_[s][da], nb = avail_count_[s][db];
      while (da > 0 && db > 0) {
        if (na == 0) {
          if (--da == 0) break;
          na = cap_count_[s][da];
          continue;
        }
        if (nb == 0) {
          if (--db == 0) break;
          nb = avail_count_[s][db];
          continue;
        }
        const int pairs = std::min(na, nb);
        total += pairs * std::min(da, db);
        na -= pairs;
        nb -= pairs;
      }
    }
    return total;
  }

  void apply(int v, int w) {
    const int s = gender_slot(g_.gender[v]);
    --cap_count_[s][cap_[v]];
    assign_[v] = w;
    if (w >= 0) {
      used_[w] = 1;
      --avail_count_[gender_slot(h_.gender[w])][h_.children[w].size()];
      w_cur_ += gain(v, w);
    } else {
      for (int u : g_.parents[v]) {
        if (assign_[u] != kUnassigned) continue;
        const int su = gender_slot(g_.gender[u]);
        --cap_count_[su][cap_[u]];
        --cap_[u];
        ++cap_count_[su][cap_[u]];
      }
    }
  }

  void undo(int v) {
    const int w = assign_[v];
    const int s = gender_slot(g_.gender[v]);
    if (w >= 0) {
      w_cur_ -= gain(v, w);
      used_[w] = 0;
      ++avail_count_[gender_slot(h_.gender[w])][h_.children[w].size()];
    } else {
      for (int u : g_.parents[v]) {
        if (assign_[u] != kUnassigned) continue;
        const int su = gender_slot(g_.gender[u]);
        --cap_count_[su][cap_[u]];
        ++cap_[u];
        ++cap_count_[su][cap_[u]];
      }
    }
    assign_[v] = kUnassigned;
    ++cap_count_[s][cap_[v]];
  }

  bool dfs(size_t k) {
    if (k == order_.size()) return w_cur_ >= w_req_;
    const int v = order_[k];

    if (forced_[v] >= 0) {
      apply(v, forced_[v]);
      if (w_cur_ + future_bound() >= w_req_ && dfs(k + 1)) return true;
      undo(v);
      return false;
    }

    // Best immediate gains first so that good incumbents appear early.
    std::vector<std::pair<int, int>> candidates;
    const int sv = gender_slot(g_.gender[v]);
    for (int w = 0; w < h_.n; ++w) {
      if (used_[w] || reserved_[w] || gender_slot(h_.gender[w]) != sv) continue;
      candidates.emplace_back(-gain(v, w), w);
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.emplace_back(0, kNull);

    for (const auto& [neg_gain, w] : candidates) {
      apply(v, w);
      if (w_cur_ + future_bound() >= w_req_ && dfs(k + 1)) return true;
      undo(v);
    }
    return false;
  }

  const MatchGraph& g_;
  const MatchGraph& h_;
  std::vector<int> forced_;
  std::vector<char> reserved_;
  std::vector<int> order_;
  std::vector<uint64_t> child_bits_;
  int words_ = 0;
  int max_deg_ = 0;

  std::vector<int> assign_;
  std::vector<char> used_;
  std::vector<int> cap_;
  std::array<std::vector<int>, 2> cap_count_;
  std::array<std::vector<int>, 2> avail_count_;
  int w_cur_ = 0;
  int w_req_ = 0;
};

}  // namespace

DistanceReport branch_and_bound(const MatchGraph& g, const MatchGraph& h, int cap,
                                const Matching* hint) {
  const auto t0 = Clock::now();
  if (g.n > cap || h.n > cap)
    throw TooLargeError("branch and bound limited to " + std::to_string(cap) +
                        " individuals per pedigree (got " + std::to_string(g.n) +
                        " and " + std::to_string(h.n) + ")");
  auto forced = forced_matching(g, h);
  if (!forced)
    throw PreconditionError("a shared label sits on individuals of different genders");

  Matching incumbent = *forced;
  if (hint && is_valid_matching(g, h, *hint)) incumbent = *hint;
  int best = match_distance(g, h, incumbent);

  const int total_edges = g.edge_count + h.edge_count;
  BranchAndBound solver(g, h, *forced);
  for (int target = std::abs(g.edge_count - h.edge_count); target < best; target += 2) {
    if (auto found = solver.search((total_edges - target) / 2)) {
      incumbent = *found;
      best = target;
      break;
    }
  }

  DistanceReport report = make_report(g, h, std::move(incumbent), "branch-and-bound",
                                      {{"cap", std::to_string(cap)}});
  report.elapsed_ms = ms_since(t0);
  return report;
}

DistanceReport branch_and_bound(const Pedigree& p, const Pedigree& q, int cap) {
  const auto t0 = Clock::now();
  const MatchGraph g = MatchGraph::of(p), h = MatchGraph::of(q);
  // A heuristic incumbent tightens the first search targets considerably;
  // skipped for inputs the heuristic does not accept.
  std::optional<Matching> hint;
  try {
    hint = random_matching(p, q, 64, 0x9e3779b9).matching;
  } catch (const PreconditionError&) {
  }
  DistanceReport report = branch_and_bound(g, h, cap, hint ? &*hint : nullptr);
  report.elapsed_ms = ms_since(t0);
  return report;
}

// ---------------------------------------------------------------------------
// Shared layout for the generation-structured solvers
// ---------------------------------------------------------------------------

namespace {

struct Layered {
  MatchGraph g, h;
  std::vector<int> gen_p, gen_q;  // 1-based generation numbers
  int gens = 0;
  Matching forced;
  std::vector<std::array<std::vector<int>, 2>> free_p, free_q;
  std::vector<int> layer_edges;  // per layer t (gen t+1 parents), both sides
};

Layered build_layered(const Pedigree& p, const Pedigree& q, const char* who,
                      bool require_equal_counts, bool require_last_gen_forced) {
  Layered lay;
  lay.g = MatchGraph::of(p);
  lay.h = MatchGraph::of(q);

  auto forced = forced_matching(lay.g, lay.h);
  if (!forced)
    throw PreconditionError(std::string(who) +
                            ": a shared label sits on individuals of different genders");
  lay.forced = *forced;

  auto gm_p = generation_map(p), gm_q = generation_map(q);
  if (!gm_p || !gm_q)
    throw PreconditionError(std::string(who) + ": both pedigrees must be generational");
  if (gm_p->max_generation != gm_q->max_generation)
    throw PreconditionError(std::string(who) + ": generation counts differ (" +
                            std::to_string(gm_p->max_generation) + " vs " +
                            std::to_string(gm_q->max_generation) + ")");
  lay.gen_p = gm_p->generation;
  lay.gen_q = gm_q->generation;
  lay.gens = gm_p->max_generation;

  std::vector<char> image(lay.h.n, 0);
  for (int v = 0; v < lay.g.n; ++v) {
    const int w = lay.forced.target[v];
    if (w < 0) continue;
    image[w] = 1;
    if (lay.gen_p[v] != lay.gen_q[w])
      throw PreconditionError(std::string(who) +
                              ": equally labeled individuals sit in different "
                              "generations; no generation-preserving matching "
                              "respects the labels");
  }

  lay.free_p.resize(lay.gens);
  lay.free_q.resize(lay.gens);
  for (int v = 0; v < lay.g.n; ++v)
    if (lay.forced.target[v] < 0)
      lay.free_p[lay.gen_p[v] - 1][gender_slot(lay.g.gender[v])].push_back(v);
  for (int w = 0; w < lay.h.n; ++w)
    if (!image[w]) lay.free_q[lay.gen_q[w] - 1][gender_slot(lay.h.gender[w])].push_back(w);

  if (require_equal_counts) {
    for (int t = 0; t < lay.gens; ++t)
      for (int s = 0; s < 2; ++s)
        if (lay.free_p[t][s].size() != lay.free_q[t][s].size())
          throw PreconditionError(
              std::string(who) + ": generation " + std::to_string(t + 1) +
              " has unequal unmatched " + (s == 0 ? "male" : "female") +
              " counts (" + std::to_string(lay.free_p[t][s].size()) + " vs " +
              std::to_string(lay.free_q[t][s].size()) + ")");
  }
  if (require_last_gen_forced && lay.gens > 0) {
    const int last = lay.gens - 1;
    if (!lay.free_p[last][0].empty() || !lay.free_p[last][1].empty() ||
        !lay.free_q[last][0].empty() || !lay.free_q[last][1].empty())
      throw PreconditionError(std::string(who) +
                              ": the youngest generation must be fully labeled "
                              "on both sides");
  }

  lay.layer_edges.assign(std::max(lay.gens - 1, 0), 0);
  for (int v = 0; v < lay.g.n; ++v)
    if (!lay.g.parents[v].empty()) lay.layer_edges[lay.gen_p[v] - 2] += 2;
  for (int w = 0; w < lay.h.n; ++w)
    if (!lay.h.parents[w].empty()) lay.layer_edges[lay.gen_q[w] - 2] += 2;
  return lay;
}

// Number of children of u mapped into the children of w.
int overlap_under(const MatchGraph& g, const MatchGraph& h,
                  const std::vector<int>& target, int u, int w) {
  int total = 0;
  for (int c : g.children[u])
    if (target[c] >= 0 && h.has_edge(w, target[c])) ++total;
  return total;
}

}  // namespace

// ---------------------------------------------------------------------------
// Two-generation exact solver
// ---------------------------------------------------------------------------

DistanceReport two_generation_exact(const Pedigree& p, const Pedigree& q) {
  const auto t0 = Clock::now();
  Layered lay = build_layered(p, q, "two-generation solver",
                              /*require_equal_counts=*/false,
                              /*require_last_gen_forced=*/true);
  if (lay.gens != 2)
    throw PreconditionError("two-generation solver: expected exactly 2 generations, got " +
                            std::to_string(lay.gens));

  Matching m = lay.forced;
  for (int s = 0; s < 2; ++s) {
    const auto& rows = lay.free_p[0][s];
    const auto& cols = lay.free_q[0][s];
    const int n = static_cast<int>(std::max(rows.size(), cols.size()));
    if (n == 0) continue;
    WeightMatrix w(n);
    for (size_t r = 0; r < rows.size(); ++r)
      for (size_t c = 0; c < cols.size(); ++c)
        w.at(static_cast<int>(r), static_cast<int>(c)) =
            overlap_under(lay.g, lay.h, m.target, rows[r], cols[c]);
    const Assignment a = max_weight_assignment(w);
    for (size_t r = 0; r < rows.size(); ++r) {
      const int c = a.col_of_row[r];
      if (static_cast<size_t>(c) < cols.size()) m.target[rows[r]] = cols[c];
    }
  }

  DistanceReport report = make_report(lay.g, lay.h, std::move(m), "two-generation");
  report.elapsed_ms = ms_since(t0);
  return report;
}

// ---------------------------------------------------------------------------
// Bounded-deviation dynamic program
// ---------------------------------------------------------------------------

uint64_t bounded_matching_count(int n, int c) {
  if (n < 1) throw PreconditionError("bounded_matching_count requires n >= 1");
  if (c < 0) throw PreconditionError("bounded_matching_count requires c >= 0");
  const uint64_t kMax = std::numeric_limits<uint64_t>::max();
  std::vector<std::vector<uint64_t>> t(n + 1, std::vector<uint64_t>(c + 1, 1));
  for (int i = 2; i <= n; ++i) {
    for (int j = 2; j <= c; ++j) {
      const uint64_t a = t[i - 1][j];
      const uint64_t b = t[i - 1][j - 2];
      uint64_t prod;
      if (b != 0 && static_cast<uint64_t>(i - 1) > kMax / b)
        prod = kMax;
      else
        prod = (i - 1) * b;
      t[i][j] = (a > kMax - prod) ? kMax : a + prod;
    }
  }
  return t[n][c];
}

namespace {

using StateKey = std::vector<int>;  // targets of the free vertices, in order

struct DpEntry {
  int cost = std::numeric_limits<int>::max();
  StateKey back;  // chosen state of the next-younger generation
};

using DpTable = std::map<StateKey, DpEntry>;

// Enumerates all assignments of the free generation-t vertices whose layer
// cost (against the already-fixed generation t+1) stays below `k`, invoking
// `emit(key, layer_cost)` for each. Vertices are assigned females first,
// then males, within gender by descending child count; every partial
// assignment whose accumulated cost reaches k is abandoned.
// Canonical row order of a generation's free vertices: females then males,
// each ascending by index. State keys list targets in this order.
std::vector<int> state_rows(const Layered& lay, int t) {
  std::vector<int> rows;
  for (int s : {1, 0})
    for (int v : lay.free_p[t][s]) rows.push_back(v);
  return rows;
}

// Applies a state key onto the working target map (and can clear it again).
void apply_state(const Layered& lay, int t, const StateKey& key,
                 std::vector<int>& target, bool set) {
  size_t j = 0;
  for (int v : state_rows(lay, t)) target[v] = set ? key[j++] : -1;
}

class LayerEnumerator {
 public:
  LayerEnumerator(const Layered& lay, int t, int k, std::vector<int>& target)
      : lay_(lay), k_(k), target_(target), key_rows_(state_rows(lay, t)) {
    // Recurse over high-degree vertices first; their assignments carry the
    // largest cost terms, so infeasible prefixes die sooner.
    rows_ = key_rows_;
    std::stable_sort(rows_.begin(), rows_.end(), [&](int a, int b) {
      const int sa = gender_slot(lay_.g.gender[a]), sb = gender_slot(lay_.g.gender[b]);
      if (sa != sb) return sa > sb;  // females first
      const size_t da = lay_.g.children[a].size(), db = lay_.g.children[b].size();
      if (da != db) return da > db;
      return a < b;
    });
    for (int s = 0; s < 2; ++s) cols_[s] = lay_.free_q[t][s];
    used_.assign(lay_.h.n, 0);

    // Layer cost accumulates per matched pair as deg(u) + deg(w) - 2*overlap;
    // summed over the whole generation that equals both layers' edge counts
    // minus twice the well-matched edges. The forced pairs' share is fixed.
    for (int v = 0; v < lay_.g.n; ++v) {
      if (lay_.gen_p[v] - 1 != t || lay_.forced.target[v] < 0) continue;
      const int w = lay_.forced.target[v];
      base_cost_ += static_cast<int>(lay_.g.children[v].size()) +
                    static_cast<int>(lay_.h.children[w].size()) -
                    2 * overlap_under(lay_.g, lay_.h, target_, v, w);
    }
  }

  template <typename Emit>
  uint64_t enumerate(Emit&& emit) {
    count_ = 0;
    if (base_cost_ < k_) recurse(0, base_cost_, emit);
    return count_;
  }

 private:
  template <typename Emit>
  void recurse(size_t i, int cost, Emit& emit) {
    if (i == rows_.size()) {
      ++count_;
      StateKey key(key_rows_.size());
      for (size_t j = 0; j < key_rows_.size(); ++j) key[j] = target_[key_rows_[j]];
      emit(std::move(key), cost);
      return;
    }
    const int u = rows_[i];
    const int s = gender_slot(lay_.g.gender[u]);
    const int deg_u = static_cast<int>(lay_.g.children[u].size());
    for (int w : cols_[s]) {
      if (used_[w]) continue;
      const int deg_w = static_cast<int>(lay_.h.children[w].size());
      const int step =
          deg_u + deg_w - 2 * overlap_under(lay_.g, lay_.h, target_, u, w);
      if (cost + step >= k_) continue;
      used_[w] = 1;
      target_[u] = w;
      recurse(i + 1, cost + step, emit);
      target_[u] = -1;
      used_[w] = 0;
    }
  }

  const Layered& lay_;
  int k_;
  std::vector<int>& target_;
  std::vector<int> key_rows_;
  std::vector<int> rows_;
  std::array<std::vector<int>, 2> cols_;
  std::vector<char> used_;
  int base_cost_ = 0;
  uint64_t count_ = 0;
};

}  // namespace

std::optional<DistanceReport> dp_bounded(const Pedigree& p, const Pedigree& q, int k,
                                         DpStats* stats) {
  const auto t0 = Clock::now();
  if (k < 1) throw PreconditionError("dp_bounded requires k >= 1");
  Layered lay = build_layered(p, q, "bounded dp", /*require_equal_counts=*/true,
                              /*require_last_gen_forced=*/true);
  if (lay.gens == 0) {
    if (stats) *stats = DpStats{};
    return make_report(lay.g, lay.h, lay.forced, "dp", {{"k", std::to_string(k)}});
  }

  DpStats local;
  int m_max = 1;
  for (int t = 0; t < lay.gens; ++t)
    for (int s = 0; s < 2; ++s)
      m_max = std::max(m_max, static_cast<int>(lay.free_p[t][s].size()));
  auto saturating_mul = [](uint64_t a, uint64_t b) {
    if (a != 0 && b > std::numeric_limits<uint64_t>::max() / a)
      return std::numeric_limits<uint64_t>::max();
    return a * b;
  };
  local.budget = saturating_mul(bounded_matching_count(m_max, k),
                                bounded_matching_count(m_max, k));

  std::vector<int> target = lay.forced.target;  // working map, extended per level

  std::vector<DpTable> tables(lay.gens);
  tables[lay.gens - 1][StateKey{}] = DpEntry{0, {}};

  for (int t = lay.gens - 2; t >= 0; --t) {
    DpTable& next = tables[t + 1];
    DpTable& cur = tables[t];
    const uint64_t step_bound = saturating_mul(
        bounded_matching_count(std::max<int>(1, lay.free_p[t][0].size()), k),
        bounded_matching_count(std::max<int>(1, lay.free_p[t][1].size()), k));
    for (const auto& [next_key, next_entry] : next) {
      apply_state(lay, t + 1, next_key, target, true);
      LayerEnumerator enumerator(lay, t, k, target);
      const uint64_t enumerated =
          enumerator.enumerate([&](StateKey key, int layer_cost) {
            const int total = next_entry.cost + layer_cost;
            auto [it, inserted] = cur.try_emplace(std::move(key));
            if (inserted || total < it->second.cost)
              it->second = DpEntry{total, next_key};
          });
      apply_state(lay, t + 1, next_key, target, false);

      ++local.steps;
      local.max_enumerated = std::max(local.max_enumerated, enumerated);
      if (enumerated > step_bound) ++local.budget_exceeded_steps;
    }
    local.table_peak = std::max(local.table_peak, static_cast<uint64_t>(cur.size()));
    if (cur.empty()) {
      if (stats) *stats = local;
      return std::nullopt;
    }
  }

  const DpTable& first = tables[0];
  auto best = first.begin();
  for (auto it = first.begin(); it != first.end(); ++it)
    if (it->second.cost < best->second.cost) best = it;

  // Walk the backpointers to assemble the witness matching.
  Matching m = lay.forced;
  const StateKey* key = &best->first;
  for (int t = 0; t < lay.gens; ++t) {
    const auto rows = state_rows(lay, t);
    for (size_t j = 0; j < rows.size(); ++j) m.target[rows[j]] = (*key)[j];
    if (t + 1 < lay.gens) key = &tables[t].at(*key).back;
  }

  if (stats) *stats = local;
  DistanceReport report =
      make_report(lay.g, lay.h, std::move(m), "dp", {{"k", std::to_string(k)}});
  report.elapsed_ms = ms_since(t0);
  return report;
}

// ---------------------------------------------------------------------------
// Gamma-best dynamic-programming heuristic
// ---------------------------------------------------------------------------

DistanceReport dp_gamma_heuristic(const Pedigree& p, const Pedigree& q, int gamma) {
  const auto t0 = Clock::now();
  if (gamma < 1) throw PreconditionError("dp_gamma_heuristic requires gamma >= 1");
  Layered lay = build_layered(p, q, "gamma dp", /*require_equal_counts=*/true,
                              /*require_last_gen_forced=*/true);
  if (lay.gens == 0)
    return make_report(lay.g, lay.h, lay.forced, "dp-gamma",
                       {{"gamma", std::to_string(gamma)}});

  std::vector<int> target = lay.forced.target;
  std::vector<DpTable> tables(lay.gens);
  tables[lay.gens - 1][StateKey{}] = DpEntry{0, {}};

  for (int t = lay.gens - 2; t >= 0; --t) {
    DpTable& next = tables[t + 1];
    DpTable& cur = tables[t];
    for (const auto& [next_key, next_entry] : next) {
      apply_state(lay, t + 1, next_key, target, true);

      int forced_overlap = 0;
      for (int v = 0; v < lay.g.n; ++v)
        if (lay.gen_p[v] - 1 == t && lay.forced.target[v] >= 0)
          forced_overlap +=
              overlap_under(lay.g, lay.h, target, v, lay.forced.target[v]);

      // Per-gender candidate lists, best overlap first.
      std::array<std::vector<Assignment>, 2> lists;
      for (int s = 0; s < 2; ++s) {
        const auto& rows = lay.free_p[t][s];
        const auto& cols = lay.free_q[t][s];
        const int n = static_cast<int>(rows.size());
        if (n == 0) {
          lists[s] = {Assignment{}};
          continue;
        }
        WeightMatrix w(n);
        for (int r = 0; r < n; ++r)
          for (int c = 0; c < n; ++c)
            w.at(r, c) = overlap_under(lay.g, lay.h, target, rows[r], cols[c]);
        lists[s] = k_best_assignments(w, gamma);
      }

      // Top-gamma combined pairs by summed overlap (frontier merge of two
      // sorted lists).
      using Frontier = std::pair<int, int>;
      auto value = [&](const Frontier& f) {
        return lists[0][f.first].total_weight + lists[1][f.second].total_weight;
      };
      auto cmp = [&](const Frontier& a, const Frontier& b) {
        return value(a) < value(b);
      };
      std::priority_queue<Frontier, std::vector<Frontier>, decltype(cmp)> heap(cmp);
      std::set<Frontier> seen;
      heap.push({0, 0});
      seen.insert({0, 0});
      int emitted = 0;
      while (!heap.empty() && emitted < gamma) {
        const auto [i, j] = heap.top();
        heap.pop();
        ++emitted;

        const int64_t total_overlap =
            forced_overlap + lists[0][i].total_weight + lists[1][j].total_weight;
        const int layer_cost =
            lay.layer_edges[t] - 2 * static_cast<int>(total_overlap);

        StateKey key;
        for (int s : {1, 0}) {
          const auto& a = (s == 0 ? lists[0][i] : lists[1][j]);
          const auto& cols = lay.free_q[t][s];
          for (size_t r = 0; r < lay.free_p[t][s].size(); ++r)
            key.push_back(cols[a.col_of_row[r]]);
        }
        const int total = next_entry.cost + layer_cost;
        auto [it, inserted] = cur.try_emplace(std::move(key));
        if (inserted || total < it->second.cost)
          it->second = DpEntry{total, next_key};

        if (i + 1 < static_cast<int>(lists[0].size()) && seen.insert({i + 1, j}).second)
          heap.push({i + 1, j});
        if (j + 1 < static_cast<int>(lists[1].size()) && seen.insert({i, j + 1}).second)
          heap.push({i, j + 1});
      }

      apply_state(lay, t + 1, next_key, target, false);
    }
  }

  const DpTable& first = tables[0];
  auto best = first.begin();
  for (auto it = first.begin(); it != first.end(); ++it)
    if (it->second.cost < best->second.cost) best = it;

  Matching m = lay.forced;
  const StateKey* key = &best->first;
  for (int t = 0; t < lay.gens; ++t) {
    const auto rows = state_rows(lay, t);
    for (size_t j = 0; j < rows.size(); ++j) m.target[rows[j]] = (*key)[j];
    if (t + 1 < lay.gens) key = &tables[t].at(*key).back;
  }

  DistanceReport report = make_report(lay.g, lay.h, std::move(m), "dp-gamma",
                                      {{"gamma", std::to_string(gamma)}});
  report.elapsed_ms = ms_since(t0);
  return report;
}

}  // namespace pedcmp
