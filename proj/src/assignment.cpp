#include "pedcmp/assignment.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>

namespace pedcmp {

namespace {

constexpr int64_t kForbidden = int64_t{1} << 40;  // minimization sentinel
constexpr int64_t kBig = std::numeric_limits<int64_t>::max() / 4;

struct Constraints {
  // col fixed per row (-1 = free); pairs (r,c) that must not be used.
  std::vector<int> forced;
  std::vector<std::pair<int, int>> forbidden;
};

// Jonker-Volgenant shortest augmenting path assignment, minimization form.
// Returns col-per-row and fills optimal duals (complementary slackness holds
// at exit: every assigned edge is tight, all reduced costs non-negative).
std::vector<int> jv_min(const std::vector<int64_t>& a, int n,
                        std::vector<int64_t>& u_out, std::vector<int64_t>& v_out) {
  std::vector<int64_t> u(n + 1, 0), v(n + 1, 0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<int64_t> minv(n + 1, kBig);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      int j1 = -1;
      int64_t delta = kBig;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const int64_t cur = a[size_t(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> col_of_row(n, -1);
  for (int j = 1; j <= n; ++j)
    if (p[j] > 0) col_of_row[p[j] - 1] = j - 1;
  u_out.assign(u.begin() + 1, u.end());
  v_out.assign(v.begin() + 1, v.end());
  return col_of_row;
}

// Lexicographically smallest perfect matching restricted to `allowed` edges,
// starting from a known perfect matching. Rows are settled in ascending
// order; each candidate column is accepted iff the remainder can still be
// completed (tested by a single augmenting-path search).
std::optional<std::vector<int>> lex_smallest_matching(
    int n, const std::vector<char>& allowed, std::vector<int> match) {
  std::vector<int> row_of_col(n, -1);
  for (int r = 0; r < n; ++r) row_of_col[match[r]] = r;
  std::vector<char> locked_row(n, 0), locked_col(n, 0);

  for (int r = 0; r < n; ++r) {
    bool placed = false;
    for (int c = 0; c < n && !placed; ++c) {
      if (locked_col[c] || !allowed[size_t(r) * n + c]) continue;
      if (match[r] == c) {
        placed = true;
        break;
      }
      // Try to re-route the occupant of c (and transitively) elsewhere.
      const int displaced = row_of_col[c];
      std::vector<char> visited(n, 0);
      visited[c] = 1;
      auto augment = [&](auto&& self, int row) -> bool {
        for (int j = 0; j < n; ++j) {
          if (visited[j] || locked_col[j] || !allowed[size_t(row) * n + j]) continue;
          if (row == r && j != c) continue;  // r is pinned to c
          visited[j] = 1;
          if (row_of_col[j] == -1 || (row_of_col[j] != r && self(self, row_of_col[j]))) {
            match[row] = j;
            row_of_col[j] = row;
            return true;
          }
        }
        return false;
      };
      const int old_c = match[r];
      match[r] = -1;
      row_of_col[old_c] = -1;
      match[r] = c;
      row_of_col[c] = r;
      if (displaced == -1 || displaced == r || augment(augment, displaced)) {
        placed = true;
      } else {
        // Roll back.
        match[r] = old_c;
        row_of_col[c] = displaced;
        row_of_col[old_c] = r;
      }
    }
    if (!placed) return std::nullopt;
    locked_row[r] = 1;
    locked_col[match[r]] = 1;
  }
  return match;
}

// Solves max-weight assignment under constraints; lexicographically smallest
// among the optima. nullopt when no perfect matching avoids the forbidden
// pairs.
std::optional<Assignment> solve_constrained(const WeightMatrix& w,
                                            const Constraints& cons) {
  const int n = w.n;
  if (n == 0) return Assignment{};

  int64_t max_w = 0;
  for (int64_t x : w.w) max_w = std::max(max_w, x);

  std::vector<int64_t> cost(size_t(n) * n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) cost[size_t(r) * n + c] = max_w - w.at(r, c);
  for (const auto& [r, c] : cons.forbidden) cost[size_t(r) * n + c] = kForbidden;
  for (int r = 0; r < n; ++r) {
    if (cons.forced.empty() || cons.forced[r] < 0) continue;
    for (int c = 0; c < n; ++c)
      if (c != cons.forced[r]) cost[size_t(r) * n + c] = kForbidden;
  }

  std::vector<int64_t> u, v;
  std::vector<int> match = jv_min(cost, n, u, v);
  for (int r = 0; r < n; ++r)
    if (cost[size_t(r) * n + match[r]] >= kForbidden) return std::nullopt;

  // Every optimal assignment uses only tight edges of the final duals.
  std::vector<char> tight(size_t(n) * n, 0);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      tight[size_t(r) * n + c] =
          cost[size_t(r) * n + c] < kForbidden && cost[size_t(r) * n + c] == u[r] + v[c];

  auto lex = lex_smallest_matching(n, tight, match);
  if (lex) match = *lex;

  Assignment out;
  out.col_of_row = match;
  for (int r = 0; r < n; ++r) out.total_weight += w.at(r, match[r]);
  return out;
}

}  // namespace

Assignment max_weight_assignment(const WeightMatrix& w) {
  auto result = solve_constrained(w, Constraints{});
  if (!result) throw std::logic_error("unconstrained assignment must be feasible");
  return *result;
}

std::vector<Assignment> k_best_assignments(const WeightMatrix& w, int count) {
  struct Node {
    Constraints cons;
    Assignment solution;
  };
  auto better = [](const Node& a, const Node& b) {
    if (a.solution.total_weight != b.solution.total_weight)
      return a.solution.total_weight < b.solution.total_weight;  // max-heap
    return a.solution.col_of_row > b.solution.col_of_row;        // then lex asc
  };
  std::priority_queue<Node, std::vector<Node>, decltype(better)> queue(better);

  std::vector<Assignment> out;
  if (count <= 0) return out;
  if (w.n == 0) {
    out.push_back(Assignment{});
    return out;
  }

  Constraints root;
  root.forced.assign(w.n, -1);
  if (auto best = solve_constrained(w, root)) queue.push({root, *best});

  while (!queue.empty() && static_cast<int>(out.size()) < count) {
    Node node = queue.top();
    queue.pop();
    out.push_back(node.solution);

    // Murty partition of the remaining solution space: child i forces the
    // first i-1 free rows to their current columns and forbids row i's.
    Constraints prefix = node.cons;
    for (int r = 0; r < w.n; ++r) {
      if (node.cons.forced[r] >= 0) continue;
      Constraints child = prefix;
      child.forbidden.emplace_back(r, node.solution.col_of_row[r]);
      if (auto sol = solve_constrained(w, child)) queue.push({child, *sol});
      prefix.forced[r] = node.solution.col_of_row[r];
    }
  }
  return out;
}

}  // namespace pedcmp
