// SPDX-License-Identifier: Apache-2.0

// Shannon entropies and the correlative/entropic CHSH functionals with all
// sign-permuted variants. Entropies are base-2 throughout, 0 log 0 = 0.

#pragma once

#include <array>

#include "quantum.hpp"

namespace bellzone {

// The four sign variants of the CHSH expression:
//   s[0] = E00 + E01 + E10 - E11   (canonical)
//   s[1] = E00 + E01 - E10 + E11
//   s[2] = E00 - E01 + E10 + E11
//   s[3] = -E00 + E01 + E10 + E11
struct SignVariants {
  std::array<double, 4> s;

  double canonical() const { return s[0]; }
  double max_abs() const;
};

// The four entropic variants T(i*,j*):
//   t[0] = t11 (canonical), t[1] = t10, t[2] = t01, t[3] = t00,
// where t(i*,j*) = H(A'_{i*},B'_{j*}) + H(A'_{1-i*}) + H(B'_{1-j*})
//                  - sum of the other three joint entropies.
struct EntropicVariants {
  std::array<double, 4> t;

  double canonical() const { return t[0]; }
};

// The four jointly measurable contexts (A'_i, B'_j) of a marginal scenario,
// stored in the order (0,0), (0,1), (1,0), (1,1). Construction checks
// no-signalling: the A'_i marginal must agree between the two contexts that
// contain A'_i, and likewise for B'_j.
class ContextQuad {
 public:
  static constexpr double kDefaultNsTolerance = 1e-9;

  static ContextQuad validated(const std::array<JointDistribution, 4>& d,
                               double ns_tolerance = kDefaultNsTolerance);

  const JointDistribution& context(int i, int j) const {
    return d_[static_cast<size_t>(2 * i + j)];
  }
  const std::array<JointDistribution, 4>& contexts() const { return d_; }

  std::array<double, 4> correlators() const;

 private:
  explicit ContextQuad(const std::array<JointDistribution, 4>& d) : d_(d) {}

  std::array<JointDistribution, 4> d_;
};

// -p log2 p - (1-p) log2 (1-p). p within 1e-12 outside [0,1] is clamped;
// anything worse is a domain error.
double binary_entropy(double p);

// Two-variable Shannon entropy of the four cells.
double joint_entropy(const JointDistribution& d);

enum class Party { A, B };

// Entropy of the requested single-observable marginal.
double marginal_entropy(const JointDistribution& d, Party party);

SignVariants chsh_variants(const ContextQuad& quad);

// |s1|: magnitude of the canonical combination. Variants other than s1
// never enter the reported value.
double chsh_value(const ContextQuad& quad);

// Single-observable entropies H(A'_i) are taken from context (i,0) and
// H(B'_j) from context (0,j); no-signalling makes the choice immaterial.
EntropicVariants entropic_variants(const ContextQuad& quad);

// Signed canonical t11; positive iff the entropic inequality is violated.
double chsh_e_value(const ContextQuad& quad);

}  // namespace bellzone
