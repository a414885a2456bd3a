// SPDX-License-Identifier: Apache-2.0

#include "optimize.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "rng.hpp"
#include "scan.hpp"

namespace bellzone {

namespace {

using Point = std::array<double, 4>;
using Objective = std::function<double(const Point&)>;  // minimized

constexpr double kInfeasiblePenaltyBase = 1e3;

ZoneReport evaluate_point(const Point& x, const StateParam& alpha) {
  return evaluate_class(
      MeasurementSetting{{Observable(x[0]), Observable(x[1]), Observable(x[2]),
                          Observable(x[3])},
                         alpha},
      ClassId::k1);
}

struct LocalResult {
  Point x;
  double f;
  bool converged;
};

// Standard Nelder-Mead on R^4. Angles are periodic so the walk needs no
// box constraints; final points are wrapped when reported.
LocalResult nelder_mead(const Objective& objective, const Point& start,
                        double step, int max_iterations, double tolerance) {
  constexpr int kDim = 4;
  std::array<Point, kDim + 1> simplex;
  std::array<double, kDim + 1> value;
  simplex[0] = start;
  value[0] = objective(start);
  for (int i = 0; i < kDim; ++i) {
    Point vertex = start;
    vertex[static_cast<size_t>(i)] += step;
    simplex[static_cast<size_t>(i) + 1] = vertex;
    value[static_cast<size_t>(i) + 1] = objective(vertex);
  }

  auto order = [&] {
    std::array<int, kDim + 1> index{};
    for (int i = 0; i <= kDim; ++i) index[static_cast<size_t>(i)] = i;
    std::sort(index.begin(), index.end(), [&](int lhs, int rhs) {
      return value[static_cast<size_t>(lhs)] < value[static_cast<size_t>(rhs)];
    });
    std::array<Point, kDim + 1> new_simplex;
    std::array<double, kDim + 1> new_value;
    for (int i = 0; i <= kDim; ++i) {
      new_simplex[static_cast<size_t>(i)] =
          simplex[static_cast<size_t>(index[static_cast<size_t>(i)])];
      new_value[static_cast<size_t>(i)] =
          value[static_cast<size_t>(index[static_cast<size_t>(i)])];
    }
    simplex = new_simplex;
    value = new_value;
  };

  bool converged = false;
  for (int iteration = 0; iteration < max_iterations; ++iteration) {
    order();
    if (value[kDim] - value[0] < tolerance) {
      converged = true;
      break;
    }

    Point centroid{};
    for (int i = 0; i < kDim; ++i) {
      for (int d = 0; d < kDim; ++d) {
        centroid[static_cast<size_t>(d)] +=
            simplex[static_cast<size_t>(i)][static_cast<size_t>(d)] / kDim;
      }
    }
    auto blend = [&](double coeff) {
      Point p;
      for (int d = 0; d < kDim; ++d) {
        p[static_cast<size_t>(d)] =
            centroid[static_cast<size_t>(d)] +
            coeff * (centroid[static_cast<size_t>(d)] -
                     simplex[kDim][static_cast<size_t>(d)]);
      }
      return p;
    };

    const Point reflected = blend(1.0);
    const double f_reflected = objective(reflected);
    if (f_reflected < value[0]) {
      const Point expanded = blend(2.0);
      const double f_expanded = objective(expanded);
      if (f_expanded < f_reflected) {
        simplex[kDim] = expanded;
        value[kDim] = f_expanded;
      } else {
        simplex[kDim] = reflected;
        value[kDim] = f_reflected;
      }
      continue;
    }
    if (f_reflected < value[kDim - 1]) {
      simplex[kDim] = reflected;
      value[kDim] = f_reflected;
      continue;
    }
    const Point contracted = blend(f_reflected < value[kDim] ? 0.5 : -0.5);
    const double f_contracted = objective(contracted);
    if (f_contracted < std::min(f_reflected, value[kDim])) {
      simplex[kDim] = contracted;
      value[kDim] = f_contracted;
      continue;
    }
    // Shrink toward the best vertex.
    for (int i = 1; i <= kDim; ++i) {
      for (int d = 0; d < kDim; ++d) {
        simplex[static_cast<size_t>(i)][static_cast<size_t>(d)] =
            0.5 * (simplex[static_cast<size_t>(i)][static_cast<size_t>(d)] +
                   simplex[0][static_cast<size_t>(d)]);
      }
      value[static_cast<size_t>(i)] =
          objective(simplex[static_cast<size_t>(i)]);
    }
  }
  order();
  return {simplex[0], value[0], converged};
}

void check_budget(const Budget& budget) {
  if (budget.starts <= 0 || budget.iterations <= 0 ||
      budget.tolerance <= 0.0) {
    throw std::invalid_argument("optimize requires a positive budget");
  }
}

Point seeded_start(uint64_t seed, uint64_t index) {
  Point x;
  for (uint64_t k = 0; k < 4; ++k) {
    x[k] = kTwoPi * to_unit(counter_output(seed, 4 * index + k));
  }
  return x;
}

struct MultiStartOutcome {
  LocalResult best;
  std::vector<LocalResult> all;
};

MultiStartOutcome multi_start(const Objective& objective, const Budget& budget,
                              uint64_t seed, bool keep_all) {
  MultiStartOutcome outcome;
  outcome.best.f = std::numeric_limits<double>::infinity();
  outcome.best.converged = false;
  for (int s = 0; s < budget.starts; ++s) {
    const LocalResult local =
        nelder_mead(objective, seeded_start(seed, static_cast<uint64_t>(s)),
                    0.5, budget.iterations, budget.tolerance);
    if (keep_all) outcome.all.push_back(local);
    // Ties broken toward lexicographically smaller wrapped angles so the
    // merge order never depends on scheduling.
    if (local.f < outcome.best.f) {
      outcome.best = local;
    } else if (local.f == outcome.best.f) {
      std::array<double, 4> lhs, rhs;
      for (size_t d = 0; d < 4; ++d) {
        lhs[d] = normalize_angle(local.x[d]);
        rhs[d] = normalize_angle(outcome.best.x[d]);
      }
      if (lhs < rhs) outcome.best = local;
    }
  }
  return outcome;
}

// Objective factory; all goals are expressed as minimization.
Objective make_objective(GoalKind kind, const StateParam& alpha, double eps,
                         double chsh_target) {
  switch (kind) {
    case GoalKind::max_chsh:
      return [alpha](const Point& x) { return -evaluate_point(x, alpha).chsh; };
    case GoalKind::max_chsh_e:
      return
          [alpha](const Point& x) { return -evaluate_point(x, alpha).chsh_e; };
    case GoalKind::max_chsh_in_zone3:
      return [alpha, eps](const Point& x) {
        const ZoneReport report = evaluate_point(x, alpha);
        if (report.chsh_e > eps) return -report.chsh;
        return kInfeasiblePenaltyBase + (eps - report.chsh_e);
      };
    case GoalKind::min_chsh_e_at_max_chsh:
      return [alpha, chsh_target](const Point& x) {
        const ZoneReport report = evaluate_point(x, alpha);
        return report.chsh_e +
               kInfeasiblePenaltyBase *
                   std::max(0.0, chsh_target - report.chsh);
      };
  }
  throw std::invalid_argument("unknown goal kind");
}

MeasurementSetting setting_from_point(const Point& x, const StateParam& alpha) {
  return MeasurementSetting{
      {Observable(x[0]), Observable(x[1]), Observable(x[2]), Observable(x[3])},
      alpha};
}

OptimizeResult result_from_local(const LocalResult& local, GoalKind kind,
                                 const StateParam& alpha, int starts) {
  OptimizeResult result{setting_from_point(local.x, alpha), 0.0,
                        evaluate_point(local.x, alpha), starts,
                        local.converged, true};
  switch (kind) {
    case GoalKind::max_chsh:
    case GoalKind::max_chsh_in_zone3:
      result.value = result.report.chsh;
      break;
    case GoalKind::max_chsh_e:
    case GoalKind::min_chsh_e_at_max_chsh:
      result.value = result.report.chsh_e;
      break;
  }
  return result;
}

double wrap_distance(double a, double b) {
  const double d = std::abs(normalize_angle(a) - normalize_angle(b));
  return std::min(d, kTwoPi - d);
}

// Angle-space distance modulo wrap and the 8 scenario-preserving
// relabelings of class 1.
double quotient_distance(const MeasurementSetting& lhs,
                         const MeasurementSetting& rhs) {
  static const auto perms = scenario_preserving_permutations(ClassId::k1);
  const auto a = lhs.angles();
  const auto b = rhs.angles();
  double best = std::numeric_limits<double>::infinity();
  for (const ObservablePermutation& sigma : perms) {
    double worst = 0.0;
    for (size_t i = 0; i < 4; ++i) {
      worst = std::max(
          worst, wrap_distance(a[i], b[static_cast<size_t>(sigma.sigma[i])]));
    }
    best = std::min(best, worst);
  }
  return best;
}

}  // namespace

OptimizeResult optimize(const OptimizeGoal& goal, const Budget& budget,
                        uint64_t seed) {
  check_budget(budget);

  double chsh_target = 0.0;
  if (goal.kind == GoalKind::min_chsh_e_at_max_chsh) {
    const OptimizeResult stage_one =
        optimize({GoalKind::max_chsh, goal.alpha}, budget, seed);
    chsh_target = stage_one.value - 1e-6;
  }

  const double eps = 1e-6;
  const Objective objective =
      make_objective(goal.kind, goal.alpha, eps, chsh_target);
  const MultiStartOutcome outcome =
      multi_start(objective, budget, seed, false);

  OptimizeResult result = result_from_local(outcome.best, goal.kind,
                                            goal.alpha, budget.starts);
  if (goal.kind == GoalKind::max_chsh_in_zone3 &&
      result.report.chsh_e <= eps) {
    result.feasible = false;
    result.value = std::numeric_limits<double>::quiet_NaN();
  }
  if (goal.kind == GoalKind::min_chsh_e_at_max_chsh &&
      result.report.chsh < chsh_target) {
    result.feasible = false;
  }
  return result;
}

OptimizeResult zone3_boundary(const StateParam& alpha, const Budget& budget,
                              uint64_t seed) {
  check_budget(budget);

  // Continuation in the open constraint: the supremum sits on the
  // chsh_e = 0 boundary, so tighten eps stepwise and re-polish.
  const std::array<double, 5> eps_schedule = {1e-2, 1e-3, 1e-4, 1e-5, 1e-6};

  Objective first =
      make_objective(GoalKind::max_chsh_in_zone3, alpha, eps_schedule[0], 0.0);
  MultiStartOutcome outcome = multi_start(first, budget, seed, false);
  LocalResult best = outcome.best;

  bool have_feasible =
      evaluate_point(best.x, alpha).chsh_e > eps_schedule[0];
  for (size_t stage = 1; stage < eps_schedule.size(); ++stage) {
    const double eps = eps_schedule[stage];
    Objective objective =
        make_objective(GoalKind::max_chsh_in_zone3, alpha, eps, 0.0);
    // Polish from the incumbent with progressively smaller simplices, plus
    // a few fresh starts to escape a bad basin.
    LocalResult stage_best = nelder_mead(objective, best.x, 0.05,
                                         budget.iterations, budget.tolerance);
    const int fresh = std::max(4, budget.starts / 8);
    for (int s = 0; s < fresh; ++s) {
      const uint64_t index =
          static_cast<uint64_t>(budget.starts + 97 * stage + s);
      const LocalResult local =
          nelder_mead(objective, seeded_start(seed, index), 0.5,
                      budget.iterations, budget.tolerance);
      if (local.f < stage_best.f) stage_best = local;
    }
    if (stage_best.f < best.f || evaluate_point(best.x, alpha).chsh_e <= eps) {
      best = stage_best;
    }
    have_feasible = evaluate_point(best.x, alpha).chsh_e > eps;
  }

  OptimizeResult result = result_from_local(
      best, GoalKind::max_chsh_in_zone3, alpha, budget.starts);
  if (!have_feasible || result.report.chsh_e <= 0.0) {
    result.feasible = false;
    result.value = std::numeric_limits<double>::quiet_NaN();
  }
  return result;
}

std::vector<OptimizeResult> find_extremal_settings(const OptimizeGoal& goal,
                                                   int count,
                                                   double distinctness_tol,
                                                   const Budget& budget,
                                                   uint64_t seed) {
  check_budget(budget);
  if (count < 1) throw std::invalid_argument("count must be >= 1");

  double chsh_target = 0.0;
  if (goal.kind == GoalKind::min_chsh_e_at_max_chsh) {
    chsh_target =
        optimize({GoalKind::max_chsh, goal.alpha}, budget, seed).value - 1e-6;
  }
  const Objective objective =
      make_objective(goal.kind, goal.alpha, 1e-6, chsh_target);
  MultiStartOutcome outcome = multi_start(objective, budget, seed, true);

  std::sort(outcome.all.begin(), outcome.all.end(),
            [](const LocalResult& lhs, const LocalResult& rhs) {
              return lhs.f < rhs.f;
            });

  std::vector<OptimizeResult> kept;
  for (const LocalResult& local : outcome.all) {
    if (static_cast<int>(kept.size()) >= count) break;
    const OptimizeResult candidate =
        result_from_local(local, goal.kind, goal.alpha, budget.starts);
    bool distinct = true;
    for (const OptimizeResult& existing : kept) {
      if (quotient_distance(candidate.setting, existing.setting) <
          distinctness_tol) {
        distinct = false;
        break;
      }
    }
    if (distinct) kept.push_back(candidate);
  }
  return kept;
}

std::vector<std::pair<MeasurementSetting, TripleViolation>>
find_triple_violations(TripleMode mode, const StateParam& alpha,
                       const TripleSearchBudget& budget, uint64_t seed,
                       std::span<const MeasurementSetting> hints) {
  // Worst-case deficit across the three classes; positive iff the setting
  // qualifies in the requested mode.
  auto score = [mode](const TripleViolation& triple) {
    double worst = std::numeric_limits<double>::infinity();
    for (const ZoneReport& report : triple.per_class) {
      worst = std::min(worst, report.chsh_e);
      if (mode == TripleMode::both) {
        worst = std::min(worst, report.chsh - 2.0);
      }
    }
    return worst;
  };

  struct Candidate {
    Point x;
    double score;
  };
  std::vector<Candidate> candidates;
  for (const MeasurementSetting& hint : hints) {
    candidates.push_back(
        {hint.angles(), score(triple_violation_check(hint))});
  }
  for (uint64_t index = 0; index < budget.scan_samples; ++index) {
    const MeasurementSetting setting = sample_setting(seed, index, alpha);
    const double s = score(triple_violation_check(setting));
    // Scan filter keeps near-misses too; refinement sorts them out.
    if (s > -0.05) candidates.push_back({setting.angles(), s});
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& lhs, const Candidate& rhs) {
              return lhs.score > rhs.score;
            });
  const size_t refine_cap =
      std::max<size_t>(static_cast<size_t>(budget.max_results) * 8, 32);
  if (candidates.size() > refine_cap) candidates.resize(refine_cap);

  const Objective objective = [&](const Point& x) {
    return -score(triple_violation_check(setting_from_point(x, alpha)));
  };

  std::vector<std::pair<MeasurementSetting, TripleViolation>> found;
  for (const Candidate& candidate : candidates) {
    if (static_cast<int>(found.size()) >= budget.max_results) break;
    const LocalResult refined = nelder_mead(
        objective, candidate.x, 0.1, budget.refine_iterations, 1e-12);
    if (-refined.f <= 0.0) continue;
    const MeasurementSetting setting = setting_from_point(refined.x, alpha);
    bool duplicate = false;
    for (const auto& existing : found) {
      if (quotient_distance(setting, existing.first) < 0.05) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) {
      found.emplace_back(setting, triple_violation_check(setting));
    }
  }
  return found;
}

}  // namespace bellzone
