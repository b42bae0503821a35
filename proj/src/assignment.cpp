#include "specq/assignment.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace specq {

std::vector<int> assign_brute_force(const std::vector<double>& cost, int q) {
  std::vector<int> perm(q);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best = perm;
  double best_cost = assignment_cost(cost, q, perm);
  while (std::next_permutation(perm.begin(), perm.end())) {
    const double c = assignment_cost(cost, q, perm);
    if (c < best_cost) {
      best_cost = c;
      best = perm;
    }
  }
  return best;
}

std::vector<int> assign_hungarian(const std::vector<double>& cost, int q) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  // Potentials with a dummy 0-th entry; rows/cols are 1-based internally.
  std::vector<double> u(q + 1, 0.0), v(q + 1, 0.0);
  std::vector<int> col_to_row(q + 1, 0);
  std::vector<int> way(q + 1, 0);
  for (int i = 1; i <= q; ++i) {
    col_to_row[0] = i;
    int j0 = 0;
    std::vector<double> minv(q + 1, kInf);
    std::vector<char> used(q + 1, false);
    do {
      used[j0] = true;
      const int i0 = col_to_row[j0];
      double delta = kInf;
      int j1 = -1;
      for (int j = 1; j <= q; ++j) {
        if (used[j]) continue;
        const double cur = cost[(i0 - 1) * q + (j - 1)] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= q; ++j) {
        if (used[j]) {
          u[col_to_row[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (col_to_row[j0] != 0);
    do {
      const int j1 = way[j0];
      col_to_row[j0] = col_to_row[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> row_to_col(q, -1);
  for (int j = 1; j <= q; ++j) row_to_col[col_to_row[j] - 1] = j - 1;
  return row_to_col;
}

double assignment_cost(const std::vector<double>& cost, int q,
                       const std::vector<int>& row_to_col) {
  double s = 0.0;
  for (int i = 0; i < q; ++i) s += cost[i * q + row_to_col[i]];
  return s;
}

}  // namespace specq
