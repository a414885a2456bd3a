// SPDX-License-Identifier: Apache-2.0

#include "scenario.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "lp.hpp"

namespace bellzone {

namespace {

constexpr double kBoundaryTolerance = 1e-9;

using Partition = std::array<std::array<int, 2>, 2>;  // each part sorted

Partition partition_of(const PartyAssignment& pa) {
  Partition p{{{pa.party_a[0], pa.party_a[1]}, {pa.party_b[0], pa.party_b[1]}}};
  for (auto& part : p) std::sort(part.begin(), part.end());
  if (p[1] < p[0]) std::swap(p[0], p[1]);
  return p;
}

Partition canonical_partition(ClassId cls) {
  return partition_of(PartyAssignment::canonical(cls));
}

// Parties of the relabeled setting, in original observable labels.
Partition image_partition(const ObservablePermutation& sigma, ClassId cls) {
  const PartyAssignment pa = PartyAssignment::canonical(cls);
  PartyAssignment image{
      cls,
      {sigma.sigma[static_cast<size_t>(pa.party_a[0])],
       sigma.sigma[static_cast<size_t>(pa.party_a[1])]},
      {sigma.sigma[static_cast<size_t>(pa.party_b[0])],
       sigma.sigma[static_cast<size_t>(pa.party_b[1])]}};
  return partition_of(image);
}

MeasurementSetting relabeled(const MeasurementSetting& setting,
                             const ObservablePermutation& sigma) {
  const auto t = setting.angles();
  return MeasurementSetting{
      {Observable(t[static_cast<size_t>(sigma.sigma[0])]),
       Observable(t[static_cast<size_t>(sigma.sigma[1])]),
       Observable(t[static_cast<size_t>(sigma.sigma[2])]),
       Observable(t[static_cast<size_t>(sigma.sigma[3])])},
      setting.state};
}

}  // namespace

ClassId class_from_int(int id) {
  if (id < 1 || id > 3) {
    throw std::invalid_argument("class id must be 1, 2 or 3, got " +
                                std::to_string(id));
  }
  return static_cast<ClassId>(id);
}

PartyAssignment PartyAssignment::canonical(ClassId cls) {
  switch (cls) {
    case ClassId::k1:
      return {cls, {0, 1}, {2, 3}};
    case ClassId::k2:
      return {cls, {0, 3}, {1, 2}};
    case ClassId::k3:
      return {cls, {0, 2}, {1, 3}};
  }
  throw std::invalid_argument("bad ClassId");
}

void ObservablePermutation::validate() const {
  std::array<bool, 4> seen{};
  for (int v : sigma) {
    if (v < 0 || v > 3 || seen[static_cast<size_t>(v)]) {
      throw std::invalid_argument("permutation is not a bijection on {0..3}");
    }
    seen[static_cast<size_t>(v)] = true;
  }
}

Zone classify_zone(double chsh, double chsh_e) {
  if (!std::isfinite(chsh) || !std::isfinite(chsh_e)) {
    throw std::domain_error("classify_zone expects finite inputs");
  }
  const bool c_contextual = chsh > 2.0;
  const bool e_contextual = chsh_e > 0.0;
  if (!c_contextual) return e_contextual ? Zone::z2 : Zone::z1;
  return e_contextual ? Zone::z3 : Zone::z4;
}

ContextQuad contexts_for_assignment(const MeasurementSetting& setting,
                                    const PartyAssignment& assignment) {
  std::array<JointDistribution, 4> d = {
      joint_distribution(setting.angle(assignment.party_a[0]),
                         setting.angle(assignment.party_b[0]), setting.state),
      joint_distribution(setting.angle(assignment.party_a[0]),
                         setting.angle(assignment.party_b[1]), setting.state),
      joint_distribution(setting.angle(assignment.party_a[1]),
                         setting.angle(assignment.party_b[0]), setting.state),
      joint_distribution(setting.angle(assignment.party_a[1]),
                         setting.angle(assignment.party_b[1]), setting.state)};
  return ContextQuad::validated(d);
}

ZoneReport report_for_quad(const ContextQuad& quad) {
  ZoneReport report;
  report.sign_variants = chsh_variants(quad);
  report.entropic_variants = entropic_variants(quad);
  report.chsh = std::abs(report.sign_variants.canonical());
  report.chsh_e = report.entropic_variants.canonical();
  report.zone = classify_zone(report.chsh, report.chsh_e);
  report.correlators = quad.correlators();
  return report;
}

ZoneReport evaluate_assignment(const MeasurementSetting& setting,
                               const PartyAssignment& assignment) {
  return report_for_quad(contexts_for_assignment(setting, assignment));
}

ZoneReport evaluate_class(const MeasurementSetting& setting, ClassId cls) {
  return evaluate_assignment(setting, PartyAssignment::canonical(cls));
}

PermutationKind classify_permutation(const ObservablePermutation& sigma,
                                     ClassId cls) {
  sigma.validate();
  const Partition image = image_partition(sigma, cls);
  for (ClassId target : {ClassId::k1, ClassId::k2, ClassId::k3}) {
    if (image == canonical_partition(target)) {
      return {target == cls, target};
    }
  }
  throw std::logic_error("partition matches no class");  // unreachable
}

std::array<ObservablePermutation, 8> scenario_preserving_permutations(
    ClassId cls) {
  std::array<ObservablePermutation, 8> out{};
  std::array<int, 4> perm = {0, 1, 2, 3};
  size_t found = 0;
  do {
    ObservablePermutation sigma{perm};
    if (classify_permutation(sigma, cls).scenario_preserving) {
      out[found++] = sigma;
    }
  } while (std::next_permutation(perm.begin(), perm.end()) && found < 8);
  return out;
}

ForbiddenSweep forbidden_sweep(const MeasurementSetting& setting,
                               ClassId cls) {
  const auto perms = scenario_preserving_permutations(cls);
  const Partition base = canonical_partition(cls);
  const PartyAssignment pa = PartyAssignment::canonical(cls);

  ForbiddenSweep sweep;
  sweep.zone4_index = -1;
  for (size_t k = 0; k < perms.size(); ++k) {
    const ObservablePermutation& sigma = perms[k];
    SweepEntry& entry = sweep.entries[k];
    entry.perm = sigma;
    std::array<int, 2> image_a = {
        sigma.sigma[static_cast<size_t>(pa.party_a[0])],
        sigma.sigma[static_cast<size_t>(pa.party_a[1])]};
    std::sort(image_a.begin(), image_a.end());
    entry.swaps_parties = image_a != base[0];
    entry.report = evaluate_class(relabeled(setting, sigma), cls);
    if (!entry.swaps_parties && !sigma.is_identity() &&
        entry.report.zone == Zone::z4 && sweep.zone4_index < 0) {
      sweep.zone4_index = static_cast<int>(k);
    }
  }
  return sweep;
}

std::array<JointDistribution, 4> HiddenVariableModel::reconstruct() const {
  double total = 0.0;
  for (double w : weights) total += w;
  if (total <= 0.0) throw std::domain_error("hidden-variable weights sum to 0");

  std::array<std::array<double, 4>, 4> cells{};
  for (int lambda = 0; lambda < 16; ++lambda) {
    const double w = weights[static_cast<size_t>(lambda)] / total;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        const int a = (lambda >> i) & 1;
        const int b = (lambda >> (2 + j)) & 1;
        cells[static_cast<size_t>(2 * i + j)][static_cast<size_t>(2 * a + b)] +=
            w;
      }
    }
  }
  return {JointDistribution::from_cells(cells[0]),
          JointDistribution::from_cells(cells[1]),
          JointDistribution::from_cells(cells[2]),
          JointDistribution::from_cells(cells[3])};
}

LhvResult lhv_feasible(const ContextQuad& quad) {
  // 16 equality rows: one per (context, outcome) cell; 16 strategy columns.
  std::vector<double> a(16 * 16, 0.0);
  std::vector<double> b(16, 0.0);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const JointDistribution& d = quad.context(i, j);
      for (int oa = 0; oa < 2; ++oa) {
        for (int ob = 0; ob < 2; ++ob) {
          const int row = 4 * (2 * i + j) + (2 * oa + ob);
          b[static_cast<size_t>(row)] = d.p(oa, ob);
          for (int lambda = 0; lambda < 16; ++lambda) {
            const int pred_a = (lambda >> i) & 1;
            const int pred_b = (lambda >> (2 + j)) & 1;
            if (pred_a == oa && pred_b == ob) {
              a[static_cast<size_t>(row) * 16 +
                static_cast<size_t>(lambda)] = 1.0;
            }
          }
        }
      }
    }
  }

  const FeasibilityResult lp = solve_equality_feasibility(a, b, 16, 16);

  LhvResult result;
  result.feasible = lp.feasible;
  result.facet_margin = 2.0 - chsh_variants(quad).max_abs();
  result.boundary = std::abs(result.facet_margin) < kBoundaryTolerance;
  if (lp.feasible) {
    HiddenVariableModel model{};
    std::copy(lp.x.begin(), lp.x.end(), model.weights.begin());
    result.model = model;
  }
  return result;
}

bool facet_feasible(const ContextQuad& quad) {
  return chsh_variants(quad).max_abs() <= 2.0;
}

TripleViolation triple_violation_check(const MeasurementSetting& setting) {
  TripleViolation out{{evaluate_class(setting, ClassId::k1),
                       evaluate_class(setting, ClassId::k2),
                       evaluate_class(setting, ClassId::k3)},
                      true,
                      true};
  for (const ZoneReport& report : out.per_class) {
    out.all_e_contextual = out.all_e_contextual && report.chsh_e > 0.0;
    out.all_both_contextual =
        out.all_both_contextual && report.chsh_e > 0.0 && report.chsh > 2.0;
  }
  return out;
}

}  // namespace bellzone
