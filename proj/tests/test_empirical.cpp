// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <string>

#include "core/errors.hpp"
#include "core/quantum.hpp"
#include "core/runs.hpp"
#include "core/scenario.hpp"

using namespace bellzone;

namespace {

const MeasurementSetting kTable1Row1 =
    MeasurementSetting::from_angles(2.070, 1.466, 1.372, 0.769, kPi / 4.0);
const MeasurementSetting kDeterministic =
    MeasurementSetting::from_angles(0, 0, 0, 0, 0.0);

}  // namespace

TEST_CASE("simulation is deterministic") {
  const RunLog a = simulate_runs(kTable1Row1, 500, 21);
  const RunLog b = simulate_runs(kTable1Row1, 500, 21);
  CHECK(a == b);
  const RunLog c = simulate_runs(kTable1Row1, 500, 22);
  CHECK(a.records != c.records);
  REQUIRE(a.metadata.has_value());
  CHECK(a.metadata->seed == 21);
  CHECK(a.metadata->alpha == doctest::Approx(kPi / 4.0));
}

TEST_CASE("deterministic setting produces constant outcomes") {
  const RunLog log = simulate_runs(kDeterministic, 200, 5);
  for (const RunRecord& r : log.records) {
    CHECK(r.a == 0);
    CHECK(r.b == 0);
  }
}

TEST_CASE("perfectly correlated context forces a = b") {
  // theta_a0 + theta_b0 = 0 (mod 2pi) at alpha = pi/4 gives E = 1
  const MeasurementSetting setting =
      MeasurementSetting::from_angles(1.1, 2.0, -1.1, 0.3, kPi / 4.0);
  const RunLog log = simulate_runs(setting, 4000, 9);
  for (const RunRecord& r : log.records) {
    if (r.x == 0 && r.y == 0) CHECK(r.a == r.b);
  }
}

TEST_CASE("run-log parsing") {
  SUBCASE("minimal log") {
    const RunLog log = ingest_runs("x,y,a,b\n0,1,1,0\n");
    REQUIRE(log.records.size() == 1);
    CHECK(log.records[0] == RunRecord{0, 1, 1, 0});
    CHECK_FALSE(log.metadata.has_value());
  }
  SUBCASE("missing trailing newline is accepted") {
    CHECK(ingest_runs("x,y,a,b\n1,1,0,0").records.size() == 1);
  }
  SUBCASE("out-of-range field") {
    CHECK_THROWS_WITH_AS(ingest_runs("x,y,a,b\n0,2,1,0\n"),
                         doctest::Contains("line 2"), ParseError);
    CHECK_THROWS_WITH_AS(ingest_runs("x,y,a,b\n0,2,1,0\n"),
                         doctest::Contains("field y out of range"),
                         ParseError);
  }
  SUBCASE("wrong column count") {
    CHECK_THROWS_WITH_AS(ingest_runs("x,y,a,b\n0,1,1\n"),
                         doctest::Contains("expected 4 fields"), ParseError);
    CHECK_THROWS_WITH_AS(ingest_runs("x,y,a,b\n0,1,1,0,1\n"),
                         doctest::Contains("too many fields"), ParseError);
  }
  SUBCASE("empty input") {
    CHECK_THROWS_WITH_AS(ingest_runs(""), doctest::Contains("empty input"),
                         ParseError);
  }
  SUBCASE("bad header") {
    CHECK_THROWS_WITH_AS(ingest_runs("a,b,x,y\n0,0,0,0\n"),
                         doctest::Contains("expected header"), ParseError);
  }
}

TEST_CASE("round trip is lossless") {
  const RunLog original = simulate_runs(kTable1Row1, 1000, 33);
  const RunLog reread = ingest_runs(emit_runs_string(original));
  CHECK(reread == original);

  // file round trip
  const std::string path = "runs_test_roundtrip.csv";
  emit_runs_file(original, path);
  CHECK(ingest_runs_file(path) == original);
  std::remove(path.c_str());

  CHECK_THROWS_AS(ingest_runs_file("no_such_run_log.csv"), IoError);
}

TEST_CASE("estimate on a deterministic log is exact") {
  const EmpiricalEstimate est =
      estimate(simulate_runs(kDeterministic, 400, 3));
  CHECK(est.report.chsh == 2.0);
  CHECK(est.report.chsh_e == 0.0);
  CHECK(est.report.zone == Zone::z1);
  CHECK(est.jackknife_chsh == 0.0);
  CHECK(est.jackknife_chsh_e == 0.0);
}

TEST_CASE("estimate converges to the exact functionals") {
  const ZoneReport exact = evaluate_class(kTable1Row1, ClassId::k1);
  for (uint64_t seed : {1ull, 2ull, 3ull, 4ull, 5ull}) {
    const EmpiricalEstimate est =
        estimate(simulate_runs(kTable1Row1, 100000, seed));
    CHECK(std::abs(est.report.chsh - exact.chsh) <= 0.05);
    CHECK(std::abs(est.report.chsh_e - exact.chsh_e) <= 0.05);
    CHECK(est.jackknife_chsh >= 0.0);
    CHECK(est.jackknife_chsh_e >= 0.0);
    // tenth-size blocks fluctuate at the 1/sqrt(n/10) scale
    CHECK(est.jackknife_chsh <= 0.05);
    uint64_t total = 0;
    for (uint64_t count : est.context_counts) total += count;
    CHECK(total == 100000);
  }
}

TEST_CASE("missing contexts are reported") {
  RunLog log;
  log.records = {{0, 0, 0, 0}, {0, 0, 1, 1}};
  CHECK_THROWS_WITH_AS(estimate(log), doctest::Contains("(x=1,y=1)"),
                       MissingContextError);
  RunLog empty;
  CHECK_THROWS_AS(estimate(empty), MissingContextError);
}

TEST_CASE("single record per context is degenerate but defined") {
  RunLog log;
  log.records = {{0, 0, 0, 0}, {0, 1, 0, 1}, {1, 0, 1, 0}, {1, 1, 1, 1}};
  const EmpiricalEstimate est = estimate(log);
  for (size_t c = 0; c < 4; ++c) {
    CHECK(est.context_counts[c] == 1);
    for (double cell : est.contexts[c].cells()) {
      CHECK((cell == 0.0 || cell == 1.0));
    }
    CHECK(joint_entropy(est.contexts[c]) == 0.0);
  }
  CHECK(std::isfinite(est.report.chsh));
  CHECK(std::isfinite(est.report.chsh_e));
}
