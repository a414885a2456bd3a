// SPDX-License-Identifier: Apache-2.0

// Phase-1 simplex for small equality-constrained feasibility problems:
// find x >= 0 with A x = b by minimizing the sum of artificial variables.
// Dense tableau with Bland's rule; sized for the 16-strategy hidden
// variable problem, not for general LP work.

#pragma once

#include <vector>

namespace bellzone {

struct FeasibilityResult {
  bool feasible;
  double infeasibility;   // optimal artificial sum, >= 0
  std::vector<double> x;  // witness when feasible, size n
};

// A is row-major m x n; b must have size m. Rows with negative b are
// negated internally. `tolerance` is the feasibility threshold on the
// optimal artificial sum.
FeasibilityResult solve_equality_feasibility(const std::vector<double>& a,
                                             const std::vector<double>& b,
                                             int m, int n,
                                             double tolerance = 1e-9);

}  // namespace bellzone
