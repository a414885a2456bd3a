// SPDX-License-Identifier: Apache-2.0

#include "lp.hpp"

#include <cmath>
#include <stdexcept>

namespace bellzone {

namespace {
constexpr double kPivotEps = 1e-11;
}

FeasibilityResult solve_equality_feasibility(const std::vector<double>& a,
                                             const std::vector<double>& b,
                                             int m, int n, double tolerance) {
  if (m <= 0 || n <= 0 || a.size() != static_cast<size_t>(m) * n ||
      b.size() != static_cast<size_t>(m)) {
    throw std::invalid_argument("solve_equality_feasibility: bad dimensions");
  }

  const int ncols = n + m + 1;  // structural, artificial, rhs
  std::vector<double> t(static_cast<size_t>(m) * ncols, 0.0);
  auto at = [&](int r, int c) -> double& {
    return t[static_cast<size_t>(r) * ncols + c];
  };

  for (int r = 0; r < m; ++r) {
    const double sign = b[static_cast<size_t>(r)] < 0.0 ? -1.0 : 1.0;
    for (int c = 0; c < n; ++c) {
      at(r, c) = sign * a[static_cast<size_t>(r) * n + c];
    }
    at(r, n + r) = 1.0;
    at(r, ncols - 1) = sign * b[static_cast<size_t>(r)];
  }

  // Phase-1 objective row: minimize the artificial sum, expressed in the
  // nonbasic variables as obj[j] = -sum_r t[r][j].
  std::vector<double> obj(static_cast<size_t>(ncols), 0.0);
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < ncols; ++c) {
      obj[static_cast<size_t>(c)] -= at(r, c);
    }
  }
  for (int r = 0; r < m; ++r) obj[static_cast<size_t>(n + r)] = 0.0;

  std::vector<int> basis(static_cast<size_t>(m));
  for (int r = 0; r < m; ++r) basis[static_cast<size_t>(r)] = n + r;

  const int max_iterations = 200 * (m + n);
  for (int iter = 0; iter < max_iterations; ++iter) {
    // Bland's rule: smallest-index entering column with negative cost.
    int enter = -1;
    for (int c = 0; c < n + m; ++c) {
      if (obj[static_cast<size_t>(c)] < -kPivotEps) {
        enter = c;
        break;
      }
    }
    if (enter < 0) break;

    int leave = -1;
    double best_ratio = 0.0;
    for (int r = 0; r < m; ++r) {
      const double coeff = at(r, enter);
      if (coeff > kPivotEps) {
        const double ratio = at(r, ncols - 1) / coeff;
        if (leave < 0 || ratio < best_ratio - kPivotEps ||
            (std::abs(ratio - best_ratio) <= kPivotEps &&
             basis[static_cast<size_t>(r)] < basis[static_cast<size_t>(leave)])) {
          leave = r;
          best_ratio = ratio;
        }
      }
    }
    if (leave < 0) {
      // Unbounded phase-1 cannot happen (objective bounded below by 0);
      // treat as numerical breakdown.
      break;
    }

    const double pivot = at(leave, enter);
    for (int c = 0; c < ncols; ++c) at(leave, c) /= pivot;
    at(leave, enter) = 1.0;
    for (int r = 0; r < m; ++r) {
      if (r == leave) continue;
      const double factor = at(r, enter);
      if (factor == 0.0) continue;
      for (int c = 0; c < ncols; ++c) at(r, c) -= factor * at(leave, c);
      at(r, enter) = 0.0;
    }
    const double obj_factor = obj[static_cast<size_t>(enter)];
    if (obj_factor != 0.0) {
      for (int c = 0; c < ncols; ++c) {
        obj[static_cast<size_t>(c)] -= obj_factor * at(leave, c);
      }
      obj[static_cast<size_t>(enter)] = 0.0;
    }
    basis[static_cast<size_t>(leave)] = enter;
  }

  double artificial_sum = 0.0;
  for (int r = 0; r < m; ++r) {
    if (basis[static_cast<size_t>(r)] >= n) {
      artificial_sum += std::max(0.0, at(r, ncols - 1));
    }
  }

  FeasibilityResult result;
  result.infeasibility = artificial_sum;
  result.feasible = artificial_sum <= tolerance;
  result.x.assign(static_cast<size_t>(n), 0.0);
  if (result.feasible) {
    for (int r = 0; r < m; ++r) {
      const int var = basis[static_cast<size_t>(r)];
      if (var < n) {
        result.x[static_cast<size_t>(var)] =
            std::max(0.0, at(r, ncols - 1));
      }
    }
  }
  return result;
}

}  // namespace bellzone
