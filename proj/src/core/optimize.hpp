// SPDX-License-Identifier: Apache-2.0

// Maximizers over the 4-angle parameter space: extremal CHSH and CHSH_E,
// the zone-3 boundary, and searches for anomalous and permutation-robust
// settings. Multi-start Nelder-Mead; the objectives are smooth, cheap and
// multimodal, so seeded uniform starts with local refinement suffice.

#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "quantum.hpp"
#include "scenario.hpp"

namespace bellzone {

enum class GoalKind {
  max_chsh,
  max_chsh_e,
  max_chsh_in_zone3,        // maximize chsh subject to chsh_e > 0
  min_chsh_e_at_max_chsh,   // minimize chsh_e on the chsh-maximal set
};

struct OptimizeGoal {
  GoalKind kind;
  StateParam alpha;
};

struct Budget {
  int starts = 256;
  int iterations = 500;
  double tolerance = 1e-10;
};

struct OptimizeResult {
  MeasurementSetting setting;
  // The goal's reported quantity at `setting`: chsh for the chsh goals,
  // chsh_e for the entropic ones. NaN when no feasible point exists.
  double value;
  ZoneReport report;
  int starts;
  bool converged;
  bool feasible;
};

// Throws std::invalid_argument when any budget field is not positive.
OptimizeResult optimize(const OptimizeGoal& goal, const Budget& budget,
                        uint64_t seed);

// Supremum of chsh over the e-contextual region, computed by shrinking the
// open constraint chsh_e > eps down to eps = 1e-6. feasible is false when
// the region is empty (for example at alpha = 0).
OptimizeResult zone3_boundary(const StateParam& alpha, const Budget& budget,
                              uint64_t seed);

// Up to `count` local maximizers pairwise separated by at least
// `distinctness_tol` in angle space, measured modulo angle wrap and the 8
// scenario-preserving relabelings.
std::vector<OptimizeResult> find_extremal_settings(const OptimizeGoal& goal,
                                                   int count,
                                                   double distinctness_tol,
                                                   const Budget& budget,
                                                   uint64_t seed);

enum class TripleMode { e_only, both };

struct TripleSearchBudget {
  uint64_t scan_samples = 200000;
  int refine_iterations = 400;
  int max_results = 4;
};

// Settings whose three party assignments all violate the entropic
// inequality (mode `both` additionally requires chsh > 2 in every class).
// `hints` seeds the candidate list before the scan filter. An empty result
// means nothing was found within the budget.
std::vector<std::pair<MeasurementSetting, TripleViolation>>
find_triple_violations(TripleMode mode, const StateParam& alpha,
                       const TripleSearchBudget& budget, uint64_t seed,
                       std::span<const MeasurementSetting> hints = {});

}  // namespace bellzone
