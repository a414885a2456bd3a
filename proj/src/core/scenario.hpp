// SPDX-License-Identifier: Apache-2.0

// Party assignments (classes 1-3), zone classification, the permutation
// algebra on the four observables, and the local-hidden-variable
// feasibility oracle with its independent facet cross-check.

#pragma once

#include <array>
#include <optional>

#include "info.hpp"
#include "quantum.hpp"

namespace bellzone {

// The three partitions of {X1..X4} into two two-observable parties:
//   class 1: {X1,X2 | X3,X4}, class 2: {X1,X4 | X2,X3},
//   class 3: {X1,X3 | X2,X4}.
enum class ClassId : int { k1 = 1, k2 = 2, k3 = 3 };

ClassId class_from_int(int id);

// A class together with the slot order: party_a[0] is A'_0 and so on.
struct PartyAssignment {
  ClassId cls;
  std::array<int, 2> party_a;
  std::array<int, 2> party_b;

  // Slot order as listed in the class definition.
  static PartyAssignment canonical(ClassId cls);
};

// Bijection on the four observables; slot i of the relabeled setting holds
// the observable originally labeled sigma[i].
struct ObservablePermutation {
  std::array<int, 4> sigma;

  static ObservablePermutation identity() { return {{0, 1, 2, 3}}; }
  bool is_identity() const { return sigma == std::array<int, 4>{0, 1, 2, 3}; }

  // Verifies bijectivity; throws std::invalid_argument otherwise.
  void validate() const;
};

enum class Zone : int { z1 = 1, z2 = 2, z3 = 3, z4 = 4 };

// Everything the evaluator knows about a setting under one assignment.
struct ZoneReport {
  double chsh;
  double chsh_e;
  Zone zone;
  SignVariants sign_variants;
  EntropicVariants entropic_variants;
  std::array<double, 4> correlators;
};

// Zone from the canonical pair; boundaries count as classical
// (chsh <= 2 and chsh_e <= 0 is zone 1). Non-finite input is rejected.
Zone classify_zone(double chsh, double chsh_e);

// The quad of contexts (A'_i, B'_j) induced by an assignment. Observables
// keep their angles and are measured on the qubit of their party, so for
// classes 2-3 the within-original-party pairs become genuine cross-qubit
// contexts.
ContextQuad contexts_for_assignment(const MeasurementSetting& setting,
                                    const PartyAssignment& assignment);

ZoneReport evaluate_assignment(const MeasurementSetting& setting,
                               const PartyAssignment& assignment);
ZoneReport evaluate_class(const MeasurementSetting& setting, ClassId cls);

// Canonical functionals on an already-built quad (shared with the
// empirical plug-in path).
ZoneReport report_for_quad(const ContextQuad& quad);

struct PermutationKind {
  bool scenario_preserving;
  ClassId target;  // equals the input class when scenario-preserving
};

// scenario_preserving iff sigma maps the class's party partition to
// itself (8 of the 24 permutations); otherwise exotic, with the class
// whose partition the image equals.
PermutationKind classify_permutation(const ObservablePermutation& sigma,
                                     ClassId cls);

// The 8 scenario-preserving relabelings of a class, identity first, then
// lexicographic.
std::array<ObservablePermutation, 8> scenario_preserving_permutations(
    ClassId cls);

struct SweepEntry {
  ObservablePermutation perm;
  bool swaps_parties;  // relabeling exchanges the two parties
  ZoneReport report;
};

// Canonical inequalities evaluated on each of the 8 scenario-preserving
// relabelings (entry 0 is the identity). Party-exchange relabelings leave
// every functional invariant, so the 8 entries realize the 4 sign-variant
// relocations twice; zone4_index points at the unique within-party
// relabeling landing in zone 4 (-1 when none does).
struct ForbiddenSweep {
  std::array<SweepEntry, 8> entries;
  int zone4_index;
};

ForbiddenSweep forbidden_sweep(const MeasurementSetting& setting, ClassId cls);

// Convex weights over the 16 deterministic strategies; strategy lambda is
// indexed a0 | a1<<1 | b0<<2 | b1<<3 with a(x) = bit x.
struct HiddenVariableModel {
  std::array<double, 16> weights;

  // P(a,b|i,j) predicted by the model, in ContextQuad layout.
  std::array<JointDistribution, 4> reconstruct() const;
};

struct LhvResult {
  bool feasible;       // verdict of the 16-strategy feasibility solve
  bool boundary;       // facet margin within 1e-9 of the classical bound
  double facet_margin; // 2 - max_i |s_i|
  std::optional<HiddenVariableModel> model;
};

// Linear-feasibility oracle: is the quad a convex combination of the 16
// deterministic strategies? The verdict comes from the phase-1 solve alone;
// facet_margin is reported for the boundary flag.
LhvResult lhv_feasible(const ContextQuad& quad);

// Independent check: all 8 CHSH facets |s_i| <= 2.
bool facet_feasible(const ContextQuad& quad);

struct TripleViolation {
  std::array<ZoneReport, 3> per_class;  // classes 1, 2, 3
  bool all_e_contextual;
  bool all_both_contextual;
};

TripleViolation triple_violation_check(const MeasurementSetting& setting);

}  // namespace bellzone
