// SPDX-License-Identifier: Apache-2.0

// Exercises the shared-library surface exactly as an external C consumer
// would: through bellzone.h only.

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>

#include "bellzone.h"

namespace {

constexpr double kPi = 3.14159265358979323846;

bz_setting make_setting(double a0, double a1, double b0, double b1,
                        double alpha) {
  bz_setting s;
  s.alpha = alpha;
  s.theta[0] = a0;
  s.theta[1] = a1;
  s.theta[2] = b0;
  s.theta[3] = b1;
  return s;
}

const bz_setting kRow2 = make_setting(1.97, 1.31, 1.22, 0.83, kPi / 4.0);

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(bz_version()) == "0.1.0");
  CHECK(std::string(bz_status_name(BZ_OK)) == "ok");
  CHECK(std::string(bz_status_name(BZ_ERR_DOMAIN)) == "domain");
}

TEST_CASE("low-level evaluation") {
  double e = 0.0;
  REQUIRE(bz_correlator(1.316, 1.033, kPi / 4.0, &e) == BZ_OK);
  CHECK(e == doctest::Approx(-0.702001252183).epsilon(1e-9));

  double m = 1.0;
  REQUIRE(bz_marginal_expectation(0.7, kPi / 4.0, &m) == BZ_OK);
  CHECK(m == doctest::Approx(0.0).epsilon(1e-12));

  double cells[4] = {};
  REQUIRE(bz_joint_distribution(2.070, 1.372, kPi / 4.0, cells) == BZ_OK);
  CHECK(cells[0] == doctest::Approx(0.0111959923066).epsilon(1e-9));
  double sum = cells[0] + cells[1] + cells[2] + cells[3];
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));

  int zone = 0;
  REQUIRE(bz_classify_zone(1.71, 0.103, &zone) == BZ_OK);
  CHECK(zone == 2);
}

TEST_CASE("error reporting") {
  double e = 0.0;
  CHECK(bz_correlator(0.0, 0.0, 2.0, &e) == BZ_ERR_DOMAIN);
  CHECK(std::strstr(bz_last_error_message(), "alpha") != nullptr);
  CHECK(bz_correlator(0.0, 0.0, kPi / 4.0, nullptr) ==
        BZ_ERR_INVALID_ARGUMENT);

  bz_report report;
  CHECK(bz_evaluate(&kRow2, 5, &report) == BZ_ERR_INVALID_ARGUMENT);
  CHECK(bz_evaluate(nullptr, 1, &report) == BZ_ERR_INVALID_ARGUMENT);

  int zone = 0;
  CHECK(bz_classify_zone(std::nan(""), 0.0, &zone) == BZ_ERR_DOMAIN);
}

TEST_CASE("evaluation per class") {
  bz_report report;
  REQUIRE(bz_evaluate(&kRow2, 1, &report) == BZ_OK);
  CHECK(report.chsh == doctest::Approx(2.22).epsilon(0.02 / 2.22));
  CHECK(report.chsh_e == doctest::Approx(0.15).epsilon(0.02 / 0.15));
  CHECK(report.zone == 3);
  CHECK(report.s[0] == doctest::Approx(-report.chsh).epsilon(1e-12));

  REQUIRE(bz_evaluate(&kRow2, 2, &report) == BZ_OK);
  CHECK(report.chsh == doctest::Approx(2.0671543353).epsilon(1e-9));

  bz_triple_result triple;
  REQUIRE(bz_triple_check(&kRow2, &triple) == BZ_OK);
  CHECK(triple.all_e_contextual == 1);
  CHECK(triple.all_both_contextual == 1);
}

TEST_CASE("permutations and hidden-variable check") {
  const int swap_b[4] = {0, 1, 3, 2};
  int preserving = 0, target = 0;
  REQUIRE(bz_classify_permutation(swap_b, 1, &preserving, &target) == BZ_OK);
  CHECK(preserving == 1);
  const int swap_a0_b0[4] = {2, 1, 0, 3};
  REQUIRE(bz_classify_permutation(swap_a0_b0, 1, &preserving, &target) ==
          BZ_OK);
  CHECK(preserving == 0);
  CHECK(target == 2);

  const bz_setting row1 = make_setting(0.40, 3.02, 2.72, 2.38, kPi / 4.0);
  bz_perm_entry entries[8];
  int zone4_index = -1;
  REQUIRE(bz_forbidden_sweep(&row1, 1, entries, &zone4_index) == BZ_OK);
  REQUIRE(zone4_index >= 0);
  CHECK(entries[zone4_index].report.zone == 4);
  CHECK(entries[zone4_index].perm[2] == 3);
  CHECK(entries[zone4_index].perm[3] == 2);

  double quad[16] = {};
  REQUIRE(bz_contexts(&row1, 1, quad) == BZ_OK);
  bz_lhv_result lhv;
  REQUIRE(bz_lhv_check(quad, &lhv) == BZ_OK);
  CHECK(lhv.feasible == 0);

  REQUIRE(bz_lhv_check_setting(&row1, 1, &lhv) == BZ_OK);
  CHECK(lhv.feasible == 0);

  const bz_setting zeros = make_setting(0, 0, 0, 0, kPi / 4.0);
  REQUIRE(bz_lhv_check_setting(&zeros, 1, &lhv) == BZ_OK);
  CHECK(lhv.feasible == 1);
  CHECK(lhv.boundary == 1);
  double weight_sum = 0.0;
  for (double w : lhv.weights) weight_sum += w;
  CHECK(weight_sum == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("scan through the C API") {
  bz_scan_config config = {};
  config.alpha = kPi / 4.0;
  config.samples = 20000;
  config.seed = 3;
  config.workers = 2;
  bz_scan_summary summary;
  REQUIRE(bz_scan(&config, &summary) == BZ_OK);
  uint64_t total = 0;
  double fraction_sum = 0.0;
  for (int z = 0; z < 4; ++z) {
    total += summary.zone_counts[z];
    fraction_sum += summary.zone_fractions[z];
  }
  CHECK(total == 20000);
  CHECK(fraction_sum == doctest::Approx(1.0).epsilon(1e-12));

  bz_setting sampled_a, sampled_b;
  REQUIRE(bz_sample_setting(3, 17, kPi / 4.0, &sampled_a) == BZ_OK);
  REQUIRE(bz_sample_setting(3, 17, kPi / 4.0, &sampled_b) == BZ_OK);
  CHECK(std::memcmp(&sampled_a, &sampled_b, sizeof sampled_a) == 0);

  const double alphas[2] = {kPi / 8.0, kPi / 4.0};
  bz_scan_summary rows[2];
  REQUIRE(bz_alpha_sweep(alphas, 2, 5000, 3, 0, rows) == BZ_OK);
  CHECK(rows[0].alpha == doctest::Approx(kPi / 8.0));
  CHECK(rows[1].alpha == doctest::Approx(kPi / 4.0));
}

TEST_CASE("optimize through the C API") {
  bz_opt_budget budget = {48, 300, 1e-9};
  bz_opt_result result;
  REQUIRE(bz_optimize(BZ_GOAL_MAX_CHSH, kPi / 4.0, &budget, 7, &result) ==
          BZ_OK);
  CHECK(result.value >= 2.828);
  CHECK(result.feasible == 1);

  bz_opt_budget zero = {0, 0, 0.0};
  CHECK(bz_optimize(BZ_GOAL_MAX_CHSH, kPi / 4.0, &zero, 7, &result) ==
        BZ_ERR_INVALID_ARGUMENT);
  CHECK(bz_optimize(BZ_GOAL_MAX_CHSH, kPi / 4.0, &budget, 7, nullptr) ==
        BZ_ERR_INVALID_ARGUMENT);

  // constrained goal with an empty region reports no feasible point
  REQUIRE(bz_optimize(BZ_GOAL_MAX_CHSH_IN_ZONE3, 0.0, &budget, 7, &result) ==
          BZ_OK);
  CHECK(result.feasible == 0);
  CHECK(std::isnan(result.value));
}

TEST_CASE("run logs through the C API") {
  const bz_setting setting = make_setting(2.070, 1.466, 1.372, 0.769,
                                          kPi / 4.0);
  bz_run_log* log = nullptr;
  REQUIRE(bz_simulate_runs(&setting, 2000, 99, &log) == BZ_OK);
  REQUIRE(log != nullptr);
  CHECK(bz_run_log_size(log) == 2000);
  CHECK(bz_run_log_has_metadata(log) == 1);

  bz_setting meta;
  uint64_t seed = 0;
  REQUIRE(bz_run_log_metadata(log, &meta, &seed) == BZ_OK);
  CHECK(seed == 99);
  CHECK(meta.alpha == doctest::Approx(kPi / 4.0));

  uint8_t record[4];
  REQUIRE(bz_run_log_record(log, 0, record) == BZ_OK);
  CHECK(record[0] <= 1);
  CHECK(bz_run_log_record(log, 2000, record) == BZ_ERR_INVALID_ARGUMENT);

  char* text = nullptr;
  size_t size = 0;
  REQUIRE(bz_run_log_to_string(log, &text, &size) == BZ_OK);
  REQUIRE(text != nullptr);
  CHECK(size > 0);
  CHECK(std::strncmp(text, "# alpha=", 8) == 0);

  bz_run_log* reparsed = nullptr;
  REQUIRE(bz_run_log_parse(text, size, &reparsed) == BZ_OK);
  CHECK(bz_run_log_size(reparsed) == 2000);
  bz_string_free(text);

  const char* path = "capi_runs_test.csv";
  REQUIRE(bz_run_log_write_file(log, path) == BZ_OK);
  bz_run_log* reread = nullptr;
  REQUIRE(bz_run_log_read_file(path, &reread) == BZ_OK);
  CHECK(bz_run_log_size(reread) == 2000);
  std::remove(path);

  bz_estimate_result estimate;
  REQUIRE(bz_estimate(log, &estimate) == BZ_OK);
  CHECK(std::abs(estimate.report.chsh - 2.248) <= 0.2);
  uint64_t total = 0;
  for (int c = 0; c < 4; ++c) total += estimate.context_counts[c];
  CHECK(total == 2000);

  bz_run_log_free(log);
  bz_run_log_free(reparsed);
  bz_run_log_free(reread);

  bz_run_log* bad = nullptr;
  const char* malformed = "x,y,a,b\n0,2,0,0\n";
  CHECK(bz_run_log_parse(malformed, std::strlen(malformed), &bad) ==
        BZ_ERR_PARSE);
  CHECK(std::strstr(bz_last_error_message(), "line 2") != nullptr);
  CHECK(bz_run_log_read_file("missing_file.csv", &bad) == BZ_ERR_IO);

  const char* only_one_context = "x,y,a,b\n0,0,0,0\n";
  bz_run_log* partial = nullptr;
  REQUIRE(bz_run_log_parse(only_one_context, std::strlen(only_one_context),
                           &partial) == BZ_OK);
  bz_estimate_result unused;
  CHECK(bz_estimate(partial, &unused) == BZ_ERR_MISSING_CONTEXT);
  bz_run_log_free(partial);
}
