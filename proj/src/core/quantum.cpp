// SPDX-License-Identifier: Apache-2.0

#include "quantum.hpp"

#include <stdexcept>
#include <string>

namespace bellzone {

namespace {

constexpr double kCellSlack = 1e-12;

void require_finite(double value, const char* what) {
  if (!std::isfinite(value)) {
    throw std::domain_error(std::string(what) + " must be finite");
  }
}

}  // namespace

double normalize_angle(double theta) {
  double wrapped = std::fmod(theta, kTwoPi);
  if (wrapped < 0.0) wrapped += kTwoPi;
  // fmod can land exactly on 2pi after the correction for tiny negatives
  if (wrapped >= kTwoPi) wrapped -= kTwoPi;
  return wrapped;
}

StateParam::StateParam(double alpha) : alpha_(alpha) {
  require_finite(alpha, "alpha");
  if (alpha < 0.0 || alpha > kPi / 4.0 + 1e-15) {
    throw std::domain_error("alpha must lie in [0, pi/4], got " +
                            std::to_string(alpha));
  }
  cos_2a_ = std::cos(2.0 * alpha_);
  sin_2a_ = std::sin(2.0 * alpha_);
}

Observable::Observable(double theta) {
  require_finite(theta, "theta");
  theta_ = normalize_angle(theta);
}

MeasurementSetting MeasurementSetting::from_angles(double a0, double a1,
                                                   double b0, double b1,
                                                   double alpha) {
  return MeasurementSetting{
      {Observable(a0), Observable(a1), Observable(b0), Observable(b1)},
      StateParam(alpha)};
}

std::array<double, 4> MeasurementSetting::angles() const {
  return {observables[0].theta(), observables[1].theta(),
          observables[2].theta(), observables[3].theta()};
}

JointDistribution JointDistribution::from_cells(
    const std::array<double, 4>& cells) {
  std::array<double, 4> p = cells;
  double sum = 0.0;
  for (double& cell : p) {
    require_finite(cell, "probability");
    if (cell < 0.0) {
      if (cell < -kCellSlack) {
        throw std::domain_error("negative probability " + std::to_string(cell));
      }
      cell = 0.0;
    } else if (cell > 1.0) {
      if (cell > 1.0 + kCellSlack) {
        throw std::domain_error("probability above one " + std::to_string(cell));
      }
      cell = 1.0;
    }
    sum += cell;
  }
  if (std::abs(sum - 1.0) > 4.0 * kCellSlack) {
    throw std::domain_error("probabilities sum to " + std::to_string(sum));
  }
  return JointDistribution(p);
}

JointDistribution JointDistribution::from_moments(double m_a, double m_b,
                                                  double corr) {
  std::array<double, 4> cells{};
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const double sa = a == 0 ? 1.0 : -1.0;
      const double sb = b == 0 ? 1.0 : -1.0;
      cells[static_cast<size_t>(2 * a + b)] =
          0.25 * (1.0 + sa * m_a + sb * m_b + sa * sb * corr);
    }
  }
  return from_cells(cells);
}

double correlator(double phi_a, double phi_b, const StateParam& state) {
  require_finite(phi_a, "phi_a");
  require_finite(phi_b, "phi_b");
  return std::cos(phi_a) * std::cos(phi_b) -
         state.sin_2a() * std::sin(phi_a) * std::sin(phi_b);
}

double marginal_expectation(double phi, const StateParam& state) {
  require_finite(phi, "phi");
  return state.cos_2a() * std::cos(phi);
}

JointDistribution joint_distribution(double phi_a, double phi_b,
                                     const StateParam& state) {
  const double m_a = marginal_expectation(phi_a, state);
  const double m_b = marginal_expectation(phi_b, state);
  const double corr = correlator(phi_a, phi_b, state);
  return JointDistribution::from_moments(m_a, m_b, corr);
}

}  // namespace bellzone
