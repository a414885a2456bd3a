// SPDX-License-Identifier: Apache-2.0

#include "info.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bellzone {

namespace {

// -p log2 p with the 0 log 0 = 0 convention; expects p in [0,1].
double plog2p(double p) {
  return p > 0.0 ? -p * std::log2(p) : 0.0;
}

void check_pair(double lhs, double rhs, double tolerance, const char* what) {
  if (std::abs(lhs - rhs) > tolerance) {
    throw std::domain_error(std::string("no-signalling violated: ") + what +
                            " marginals differ by " +
                            std::to_string(std::abs(lhs - rhs)));
  }
}

}  // namespace

double SignVariants::max_abs() const {
  double best = 0.0;
  for (double v : s) best = std::max(best, std::abs(v));
  return best;
}

ContextQuad ContextQuad::validated(const std::array<JointDistribution, 4>& d,
                                   double ns_tolerance) {
  // contexts: d[0]=(A'0,B'0) d[1]=(A'0,B'1) d[2]=(A'1,B'0) d[3]=(A'1,B'1)
  check_pair(d[0].marginal_a(), d[1].marginal_a(), ns_tolerance, "A'0");
  check_pair(d[2].marginal_a(), d[3].marginal_a(), ns_tolerance, "A'1");
  check_pair(d[0].marginal_b(), d[2].marginal_b(), ns_tolerance, "B'0");
  check_pair(d[1].marginal_b(), d[3].marginal_b(), ns_tolerance, "B'1");
  return ContextQuad(d);
}

std::array<double, 4> ContextQuad::correlators() const {
  return {d_[0].correlator(), d_[1].correlator(), d_[2].correlator(),
          d_[3].correlator()};
}

double binary_entropy(double p) {
  if (!std::isfinite(p) || p < -1e-12 || p > 1.0 + 1e-12) {
    throw std::domain_error("binary_entropy expects p in [0,1], got " +
                            std::to_string(p));
  }
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return plog2p(p) + plog2p(1.0 - p);
}

double joint_entropy(const JointDistribution& d) {
  double h = 0.0;
  for (double cell : d.cells()) h += plog2p(cell);
  return h;
}

double marginal_entropy(const JointDistribution& d, Party party) {
  return binary_entropy(party == Party::A ? d.marginal_a() : d.marginal_b());
}

SignVariants chsh_variants(const ContextQuad& quad) {
  const auto e = quad.correlators();
  return SignVariants{{e[0] + e[1] + e[2] - e[3],
                       e[0] + e[1] - e[2] + e[3],
                       e[0] - e[1] + e[2] + e[3],
                       -e[0] + e[1] + e[2] + e[3]}};
}

double chsh_value(const ContextQuad& quad) {
  return std::abs(chsh_variants(quad).canonical());
}

EntropicVariants entropic_variants(const ContextQuad& quad) {
  const std::array<double, 4> joint = {
      joint_entropy(quad.context(0, 0)), joint_entropy(quad.context(0, 1)),
      joint_entropy(quad.context(1, 0)), joint_entropy(quad.context(1, 1))};
  const double joint_sum = joint[0] + joint[1] + joint[2] + joint[3];
  // Singles: H(A'_i) from context (i,0), H(B'_j) from context (0,j).
  const std::array<double, 2> h_a = {
      marginal_entropy(quad.context(0, 0), Party::A),
      marginal_entropy(quad.context(1, 0), Party::A)};
  const std::array<double, 2> h_b = {
      marginal_entropy(quad.context(0, 0), Party::B),
      marginal_entropy(quad.context(0, 1), Party::B)};

  auto variant = [&](int i_star, int j_star) {
    const double positive = joint[static_cast<size_t>(2 * i_star + j_star)];
    return positive + h_a[static_cast<size_t>(1 - i_star)] +
           h_b[static_cast<size_t>(1 - j_star)] - (joint_sum - positive);
  };
  return EntropicVariants{
      {variant(1, 1), variant(1, 0), variant(0, 1), variant(0, 0)}};
}

double chsh_e_value(const ContextQuad& quad) {
  return entropic_variants(quad).canonical();
}

}  // namespace bellzone
