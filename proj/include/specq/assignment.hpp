#ifndef SPECQ_ASSIGNMENT_HPP
#define SPECQ_ASSIGNMENT_HPP

#include <vector>

namespace specq {

// Square cost matrix in row-major order: cost[i * q + j].
// Both solvers return the column assigned to each row.

// Optimal assignment by exhaustive enumeration of all q! permutations.
// Ties are broken in favor of the lexicographically smallest permutation.
std::vector<int> assign_brute_force(const std::vector<double>& cost, int q);

// Hungarian method (Jonker-Volgenant style shortest augmenting paths), O(q^3).
std::vector<int> assign_hungarian(const std::vector<double>& cost, int q);

// Cost of a given assignment, summed in row order so that two solvers
// producing the same matching yield bit-identical totals.
double assignment_cost(const std::vector<double>& cost, int q,
                       const std::vector<int>& row_to_col);

}  // namespace specq

#endif
