// SPDX-License-Identifier: Apache-2.0

// Closed-form quantum model of the bipartite scenario: the one-parameter
// state family cos(a)|00> + sin(a)|11>, Y-Z plane observables, correlators,
// marginals, and Born-rule outcome distributions. Everything here is a pure
// function evaluated analytically; there is no linear algebra.

#pragma once

#include <array>
#include <cmath>

namespace bellzone {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Wraps an angle into [0, 2pi).
double normalize_angle(double theta);

// State parameter alpha, restricted to [0, pi/4]; other values are
// equivalent by relabeling. Construction rejects anything outside.
class StateParam {
 public:
  explicit StateParam(double alpha);

  double alpha() const { return alpha_; }
  double cos_2a() const { return cos_2a_; }
  double sin_2a() const { return sin_2a_; }

 private:
  double alpha_;
  double cos_2a_;
  double sin_2a_;
};

// Measurement direction sin(theta) sigma_Y + cos(theta) sigma_Z, with the
// angle normalized into [0, 2pi) at construction.
class Observable {
 public:
  explicit Observable(double theta);

  double theta() const { return theta_; }

 private:
  double theta_;
};

// Four observables plus the state: X1..X4 = (A0, A1, B0, B1).
struct MeasurementSetting {
  std::array<Observable, 4> observables;
  StateParam state;

  static MeasurementSetting from_angles(double a0, double a1, double b0,
                                        double b1, double alpha);

  double angle(int i) const { return observables[static_cast<size_t>(i)].theta(); }
  std::array<double, 4> angles() const;
};

// Outcome probability table P(a,b) for one context. Outcome bit 0 is
// eigenvalue +1, so the correlator is P(a=b) - P(a!=b). Cells within 1e-12
// below 0 are clamped at construction; anything worse is rejected.
class JointDistribution {
 public:
  static JointDistribution from_cells(const std::array<double, 4>& cells);
  // Cells from the moment form (1 +- m_a +- m_b +- E)/4.
  static JointDistribution from_moments(double m_a, double m_b, double corr);

  double p(int a, int b) const { return p_[static_cast<size_t>(2 * a + b)]; }
  const std::array<double, 4>& cells() const { return p_; }

  // P(a=0), P(b=0).
  double marginal_a() const { return p_[0] + p_[1]; }
  double marginal_b() const { return p_[0] + p_[2]; }
  // Expectations with the +1/-1 eigenvalue convention.
  double marginal_expectation_a() const { return 2.0 * marginal_a() - 1.0; }
  double marginal_expectation_b() const { return 2.0 * marginal_b() - 1.0; }
  double correlator() const { return p_[0] - p_[1] - p_[2] + p_[3]; }

 private:
  explicit JointDistribution(const std::array<double, 4>& cells) : p_(cells) {}

  std::array<double, 4> p_;
};

// <A(phi_a) x B(phi_b)> = cos(phi_a)cos(phi_b) - sin(2a)sin(phi_a)sin(phi_b).
double correlator(double phi_a, double phi_b, const StateParam& state);

// <A(phi)> = cos(2a) cos(phi); zero for every phi at a = pi/4.
double marginal_expectation(double phi, const StateParam& state);

// Born-rule distribution for the context (phi_a, phi_b).
JointDistribution joint_distribution(double phi_a, double phi_b,
                                     const StateParam& state);

}  // namespace bellzone
