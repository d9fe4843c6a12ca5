#pragma once

#include <cstdint>
#include <vector>

namespace pedcmp {

// Square non-negative integer weight matrix for one bipartite assignment
// instance (entry = number of co-matched children of a candidate pair).
struct WeightMatrix {
  int n = 0;
  std::vector<int64_t> w;  // row-major, n*n

  WeightMatrix() = default;
  explicit WeightMatrix(int size) : n(size), w(size_t(size) * size, 0) {}
  int64_t& at(int r, int c) { return w[size_t(r) * n + c]; }
  int64_t at(int r, int c) const { return w[size_t(r) * n + c]; }
};

struct Assignment {
  std::vector<int> col_of_row;  // a bijection on {0..n-1}
  int64_t total_weight = 0;
};

// Maximum-weight perfect assignment. Ties are broken in favor of the
// lexicographically smallest permutation (checked row by row), so results
// are reproducible across platforms and runs.
Assignment max_weight_assignment(const WeightMatrix& w);

// The `count` distinct permutations of largest total weight, sorted by
// weight descending and lexicographically within equal weights. Returns
// fewer only when n! < count. Murty-style partitioning over the optimal
// solver above; cost is roughly cubic in n per returned assignment.
std::vector<Assignment> k_best_assignments(const WeightMatrix& w, int count);

}  // namespace pedcmp
