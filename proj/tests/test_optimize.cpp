// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "core/optimize.hpp"
#include "core/rng.hpp"
#include "core/scan.hpp"

using namespace bellzone;

namespace {

const StateParam kBell(kPi / 4.0);
const Budget kQuick{64, 400, 1e-10};

double wrap_gap(double a, double b) {
  const double d = std::abs(normalize_angle(a) - normalize_angle(b));
  return std::min(d, kTwoPi - d);
}

}  // namespace

TEST_CASE("max chsh reaches the Tsirelson bound at alpha = pi/4") {
  const OptimizeResult result =
      optimize({GoalKind::max_chsh, kBell}, kQuick, 101);
  CHECK(result.value >= 2.8283);
  CHECK(result.value <= 2.0 * std::sqrt(2.0) + 1e-6);
  CHECK(result.converged);
  CHECK(result.feasible);
  // value equals the functional re-evaluated at the setting
  CHECK(result.value ==
        doctest::Approx(evaluate_class(result.setting, ClassId::k1).chsh)
            .epsilon(1e-9));
}

TEST_CASE("max chsh_e lands at the known entropic maximum") {
  const OptimizeResult result =
      optimize({GoalKind::max_chsh_e, kBell}, kQuick, 103);
  CHECK(result.value >= 0.232);
  CHECK(result.value <= 0.242);
  CHECK(result.value ==
        doctest::Approx(evaluate_class(result.setting, ClassId::k1).chsh_e)
            .epsilon(1e-9));
}

TEST_CASE("optimizer never loses to its own seeds") {
  const Budget tiny{24, 200, 1e-9};
  const OptimizeResult result =
      optimize({GoalKind::max_chsh, kBell}, tiny, 107);
  for (int s = 0; s < tiny.starts; ++s) {
    const MeasurementSetting start =
        sample_setting(107, static_cast<uint64_t>(s), kBell);
    CHECK(result.value >= evaluate_class(start, ClassId::k1).chsh - 1e-12);
  }
}

TEST_CASE("product state results") {
  const StateParam product(0.0);
  const OptimizeResult chsh =
      optimize({GoalKind::max_chsh, product}, kQuick, 109);
  CHECK(chsh.value == doctest::Approx(2.0).epsilon(1e-4 / 2.0));

  const OptimizeResult chsh_e =
      optimize({GoalKind::max_chsh_e, product}, kQuick, 109);
  CHECK(chsh_e.value <= 1e-9);

  const OptimizeResult constrained =
      optimize({GoalKind::max_chsh_in_zone3, product}, kQuick, 109);
  CHECK_FALSE(constrained.feasible);
  CHECK(std::isnan(constrained.value));

  const OptimizeResult boundary = zone3_boundary(product, kQuick, 109);
  CHECK_FALSE(boundary.feasible);
  CHECK(std::isnan(boundary.value));
}

TEST_CASE("zone-3 boundary at alpha = pi/4") {
  const OptimizeResult result = zone3_boundary(kBell, kQuick, 113);
  REQUIRE(result.feasible);
  CHECK(result.value >= 2.53);
  CHECK(result.value <= 2.59);
  CHECK(result.report.chsh_e > 0.0);
  CHECK(result.report.zone == Zone::z3);
}

TEST_CASE("max chsh is monotone in alpha") {
  double previous = -1.0;
  for (double alpha : {0.0, kPi / 16.0, kPi / 8.0, 3.0 * kPi / 16.0,
                       kPi / 4.0}) {
    const Budget small{32, 300, 1e-9};
    const OptimizeResult result =
        optimize({GoalKind::max_chsh, StateParam(alpha)}, small, 127);
    CHECK(result.value >= previous - 1e-6);
    previous = result.value;
  }
}

TEST_CASE("min chsh_e over the chsh-maximal set") {
  const OptimizeResult result =
      optimize({GoalKind::min_chsh_e_at_max_chsh, kBell}, kQuick, 131);
  // frozen: entropic value forced at the Tsirelson point
  CHECK(result.value == doctest::Approx(-1.20175207339).epsilon(0.01));
  CHECK(result.report.chsh >= 2.0 * std::sqrt(2.0) - 1e-3);
}

TEST_CASE("distinct extremal settings") {
  SUBCASE("two entropic maximizers") {
    const auto results = find_extremal_settings(
        {GoalKind::max_chsh_e, kBell}, 2, kPi / 4.0, kQuick, 137);
    REQUIRE(results.size() == 2);
    for (const OptimizeResult& r : results) {
      CHECK(r.value >= 0.232);
      CHECK(std::abs(r.report.chsh - 2.25) <= 0.02);
    }
  }
  SUBCASE("two chsh maximizers") {
    const auto results = find_extremal_settings(
        {GoalKind::max_chsh, kBell}, 2, kPi / 4.0, kQuick, 139);
    REQUIRE(results.size() == 2);
    for (const OptimizeResult& r : results) {
      CHECK(std::abs(r.value - 2.828) <= 0.001);
      CHECK(std::abs(r.report.chsh_e - (-1.21)) <= 0.02);
    }
  }
  SUBCASE("classical maximum at alpha = 0") {
    const auto results = find_extremal_settings(
        {GoalKind::max_chsh, StateParam(0.0)}, 1, 0.1, kQuick, 149);
    REQUIRE(results.size() == 1);
    CHECK(results[0].value == doctest::Approx(2.0).epsilon(1e-4 / 2.0));
  }
}

TEST_CASE("budget validation") {
  CHECK_THROWS_AS(optimize({GoalKind::max_chsh, kBell}, {0, 0, 0.0}, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(optimize({GoalKind::max_chsh, kBell}, {4, 100, -1.0}, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      find_extremal_settings({GoalKind::max_chsh, kBell}, 0, 0.1, kQuick, 1),
      std::invalid_argument);
}

TEST_CASE("triple-violation search") {
  const MeasurementSetting row1 =
      MeasurementSetting::from_angles(0.40, 3.02, 2.72, 2.38, kPi / 4.0);
  const MeasurementSetting row2 =
      MeasurementSetting::from_angles(1.97, 1.31, 1.22, 0.83, kPi / 4.0);

  SUBCASE("hint near the zone-2 reference row") {
    const MeasurementSetting hint = MeasurementSetting::from_angles(
        0.40 + 0.03, 3.02 - 0.03, 2.72 + 0.03, 2.38 - 0.03, kPi / 4.0);
    TripleSearchBudget budget;
    budget.scan_samples = 0;
    budget.max_results = 2;
    const auto found = find_triple_violations(
        TripleMode::e_only, kBell, budget, 151, std::array{hint});
    REQUIRE_FALSE(found.empty());
    bool near_reference = false;
    for (const auto& [setting, triple] : found) {
      CHECK(triple.all_e_contextual);
      bool close = true;
      for (size_t i = 0; i < 4; ++i) {
        close = close &&
                wrap_gap(setting.angles()[i], row1.angles()[i]) <= 0.05;
      }
      near_reference = near_reference || close;
    }
    CHECK(near_reference);
  }

  SUBCASE("zone-3 reference row passes the `both` filter exactly") {
    TripleSearchBudget budget;
    budget.scan_samples = 0;
    budget.max_results = 1;
    const auto found = find_triple_violations(TripleMode::both, kBell, budget,
                                              157, std::array{row2});
    REQUIRE(found.size() == 1);
    CHECK(found[0].second.all_both_contextual);
  }

  SUBCASE("scan-driven search finds anomalous settings") {
    TripleSearchBudget budget;
    budget.scan_samples = 30000;
    budget.max_results = 3;
    const auto found =
        find_triple_violations(TripleMode::e_only, kBell, budget, 163);
    CHECK_FALSE(found.empty());
    for (const auto& [setting, triple] : found) {
      CHECK(triple.all_e_contextual);
    }
  }

  SUBCASE("product state yields nothing") {
    TripleSearchBudget budget;
    budget.scan_samples = 2000;
    const auto found =
        find_triple_violations(TripleMode::e_only, StateParam(0.0), budget,
                               167);
    CHECK(found.empty());
  }
}
