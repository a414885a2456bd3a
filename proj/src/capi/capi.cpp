// SPDX-License-Identifier: Apache-2.0

// extern-C surface of the bellzone shared library. Thin translation layer:
// validates pointers, converts exceptions to status codes, and keeps a
// thread-local copy of the last error message.

#include "bellzone.h"

#include <algorithm>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "../core/errors.hpp"
#include "../core/info.hpp"
#include "../core/optimize.hpp"
#include "../core/quantum.hpp"
#include "../core/runs.hpp"
#include "../core/scan.hpp"
#include "../core/scenario.hpp"

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

struct CApiError {
  bz_status status;
  std::string message;
};

template <typename Fn>
bz_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    return BZ_OK;
  } catch (const CApiError& e) {
    set_error(e.message);
    return e.status;
  } catch (const bellzone::ParseError& e) {
    set_error(e.what());
    return BZ_ERR_PARSE;
  } catch (const bellzone::MissingContextError& e) {
    set_error(e.what());
    return BZ_ERR_MISSING_CONTEXT;
  } catch (const bellzone::IoError& e) {
    set_error(e.what());
    return BZ_ERR_IO;
  } catch (const std::domain_error& e) {
    set_error(e.what());
    return BZ_ERR_DOMAIN;
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return BZ_ERR_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    set_error("out of memory");
    return BZ_ERR_INTERNAL;
  } catch (const std::exception& e) {
    set_error(e.what());
    return BZ_ERR_INTERNAL;
  } catch (...) {
    set_error("unknown error");
    return BZ_ERR_INTERNAL;
  }
}

void require(bool ok, const char* message) {
  if (!ok) throw CApiError{BZ_ERR_INVALID_ARGUMENT, message};
}

bellzone::MeasurementSetting to_setting(const bz_setting& s) {
  return bellzone::MeasurementSetting::from_angles(
      s.theta[0], s.theta[1], s.theta[2], s.theta[3], s.alpha);
}

bz_setting from_setting(const bellzone::MeasurementSetting& s) {
  bz_setting out;
  out.alpha = s.state.alpha();
  const auto angles = s.angles();
  std::copy(angles.begin(), angles.end(), out.theta);
  return out;
}

bz_report from_report(const bellzone::ZoneReport& report) {
  bz_report out;
  out.chsh = report.chsh;
  out.chsh_e = report.chsh_e;
  out.zone = static_cast<int>(report.zone);
  std::copy(report.sign_variants.s.begin(), report.sign_variants.s.end(),
            out.s);
  std::copy(report.entropic_variants.t.begin(),
            report.entropic_variants.t.end(), out.t);
  std::copy(report.correlators.begin(), report.correlators.end(),
            out.correlators);
  return out;
}

bellzone::ContextQuad quad_from_cells(const double cells[16]) {
  auto context = [&](int offset) {
    return bellzone::JointDistribution::from_cells(
        {cells[offset], cells[offset + 1], cells[offset + 2],
         cells[offset + 3]});
  };
  return bellzone::ContextQuad::validated(
      {context(0), context(4), context(8), context(12)});
}

bellzone::Budget to_budget(const bz_opt_budget* budget) {
  if (budget == nullptr) return bellzone::Budget{};
  return bellzone::Budget{static_cast<int>(budget->starts),
                          static_cast<int>(budget->iterations),
                          budget->tolerance};
}

bz_opt_result from_opt_result(const bellzone::OptimizeResult& r) {
  bz_opt_result out;
  out.setting = from_setting(r.setting);
  out.value = r.value;
  out.report = from_report(r.report);
  out.starts = static_cast<uint32_t>(r.starts);
  out.converged = r.converged ? 1 : 0;
  out.feasible = r.feasible ? 1 : 0;
  return out;
}

bellzone::GoalKind to_goal(bz_goal_kind goal) {
  switch (goal) {
    case BZ_GOAL_MAX_CHSH:
      return bellzone::GoalKind::max_chsh;
    case BZ_GOAL_MAX_CHSH_E:
      return bellzone::GoalKind::max_chsh_e;
    case BZ_GOAL_MAX_CHSH_IN_ZONE3:
      return bellzone::GoalKind::max_chsh_in_zone3;
    case BZ_GOAL_MIN_CHSH_E_AT_MAX_CHSH:
      return bellzone::GoalKind::min_chsh_e_at_max_chsh;
  }
  throw CApiError{BZ_ERR_INVALID_ARGUMENT, "unknown goal kind"};
}

void fill_summary(const bellzone::ScanSummary& summary, bz_scan_summary* out) {
  out->alpha = summary.alpha;
  out->samples = summary.samples;
  out->seed = summary.seed;
  const auto fractions = summary.zone_fractions();
  for (size_t z = 0; z < 4; ++z) {
    out->zone_counts[z] = summary.zone_counts[z];
    out->zone_fractions[z] = fractions[z];
  }
}

}  // namespace

struct bz_run_log {
  bellzone::RunLog log;
};

extern "C" {

const char* bz_version(void) { return "0.1.0"; }

const char* bz_status_name(bz_status status) {
  switch (status) {
    case BZ_OK:
      return "ok";
    case BZ_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case BZ_ERR_DOMAIN:
      return "domain";
    case BZ_ERR_IO:
      return "io";
    case BZ_ERR_PARSE:
      return "parse";
    case BZ_ERR_MISSING_CONTEXT:
      return "missing context";
    case BZ_ERR_INTERNAL:
      return "internal";
  }
  return "unknown";
}

const char* bz_last_error_message(void) { return g_last_error.c_str(); }

bz_status bz_correlator(double phi_a, double phi_b, double alpha,
                        double* out) {
  return guarded([&] {
    require(out != nullptr, "out is null");
    *out = bellzone::correlator(phi_a, phi_b, bellzone::StateParam(alpha));
  });
}

bz_status bz_marginal_expectation(double phi, double alpha, double* out) {
  return guarded([&] {
    require(out != nullptr, "out is null");
    *out = bellzone::marginal_expectation(phi, bellzone::StateParam(alpha));
  });
}

bz_status bz_joint_distribution(double phi_a, double phi_b, double alpha,
                                double out_p[4]) {
  return guarded([&] {
    require(out_p != nullptr, "out_p is null");
    const bellzone::JointDistribution d =
        bellzone::joint_distribution(phi_a, phi_b, bellzone::StateParam(alpha));
    std::copy(d.cells().begin(), d.cells().end(), out_p);
  });
}

bz_status bz_classify_zone(double chsh, double chsh_e, int* out_zone) {
  return guarded([&] {
    require(out_zone != nullptr, "out_zone is null");
    *out_zone = static_cast<int>(bellzone::classify_zone(chsh, chsh_e));
  });
}

bz_status bz_evaluate(const bz_setting* setting, int class_id,
                      bz_report* out) {
  return guarded([&] {
    require(setting != nullptr && out != nullptr, "setting/out is null");
    *out = from_report(bellzone::evaluate_class(
        to_setting(*setting), bellzone::class_from_int(class_id)));
  });
}

bz_status bz_contexts(const bz_setting* setting, int class_id,
                      double out_p[16]) {
  return guarded([&] {
    require(setting != nullptr && out_p != nullptr, "setting/out_p is null");
    const bellzone::ContextQuad quad = bellzone::contexts_for_assignment(
        to_setting(*setting), bellzone::PartyAssignment::canonical(
                                  bellzone::class_from_int(class_id)));
    for (size_t c = 0; c < 4; ++c) {
      const auto& cells = quad.contexts()[c].cells();
      std::copy(cells.begin(), cells.end(), out_p + 4 * c);
    }
  });
}

bz_status bz_classify_permutation(const int perm[4], int class_id,
                                  int* scenario_preserving,
                                  int* target_class) {
  return guarded([&] {
    require(perm != nullptr && scenario_preserving != nullptr &&
                target_class != nullptr,
            "perm/out is null");
    bellzone::ObservablePermutation sigma{
        {perm[0], perm[1], perm[2], perm[3]}};
    const bellzone::PermutationKind kind = bellzone::classify_permutation(
        sigma, bellzone::class_from_int(class_id));
    *scenario_preserving = kind.scenario_preserving ? 1 : 0;
    *target_class = static_cast<int>(kind.target);
  });
}

bz_status bz_forbidden_sweep(const bz_setting* setting, int class_id,
                             bz_perm_entry out[8], int* zone4_index) {
  return guarded([&] {
    require(setting != nullptr && out != nullptr, "setting/out is null");
    const bellzone::ForbiddenSweep sweep = bellzone::forbidden_sweep(
        to_setting(*setting), bellzone::class_from_int(class_id));
    for (size_t k = 0; k < 8; ++k) {
      const bellzone::SweepEntry& entry = sweep.entries[k];
      std::copy(entry.perm.sigma.begin(), entry.perm.sigma.end(),
                out[k].perm);
      out[k].swaps_parties = entry.swaps_parties ? 1 : 0;
      out[k].report = from_report(entry.report);
    }
    if (zone4_index != nullptr) *zone4_index = sweep.zone4_index;
  });
}

bz_status bz_triple_check(const bz_setting* setting, bz_triple_result* out) {
  return guarded([&] {
    require(setting != nullptr && out != nullptr, "setting/out is null");
    const bellzone::TripleViolation triple =
        bellzone::triple_violation_check(to_setting(*setting));
    for (size_t c = 0; c < 3; ++c) {
      out->per_class[c] = from_report(triple.per_class[c]);
    }
    out->all_e_contextual = triple.all_e_contextual ? 1 : 0;
    out->all_both_contextual = triple.all_both_contextual ? 1 : 0;
  });
}

bz_status bz_lhv_check(const double quad_p[16], bz_lhv_result* out) {
  return guarded([&] {
    require(quad_p != nullptr && out != nullptr, "quad_p/out is null");
    const bellzone::LhvResult result =
        bellzone::lhv_feasible(quad_from_cells(quad_p));
    out->feasible = result.feasible ? 1 : 0;
    out->boundary = result.boundary ? 1 : 0;
    out->facet_margin = result.facet_margin;
    std::fill(out->weights, out->weights + 16, 0.0);
    if (result.model) {
      std::copy(result.model->weights.begin(), result.model->weights.end(),
                out->weights);
    }
  });
}

bz_status bz_lhv_check_setting(const bz_setting* setting, int class_id,
                               bz_lhv_result* out) {
  return guarded([&] {
    require(setting != nullptr && out != nullptr, "setting/out is null");
    const bellzone::ContextQuad quad = bellzone::contexts_for_assignment(
        to_setting(*setting), bellzone::PartyAssignment::canonical(
                                  bellzone::class_from_int(class_id)));
    const bellzone::LhvResult result = bellzone::lhv_feasible(quad);
    out->feasible = result.feasible ? 1 : 0;
    out->boundary = result.boundary ? 1 : 0;
    out->facet_margin = result.facet_margin;
    std::fill(out->weights, out->weights + 16, 0.0);
    if (result.model) {
      std::copy(result.model->weights.begin(), result.model->weights.end(),
                out->weights);
    }
  });
}

bz_status bz_scan(const bz_scan_config* config, bz_scan_summary* out) {
  return guarded([&] {
    require(config != nullptr && out != nullptr, "config/out is null");
    bellzone::ScanConfig cpp_config{
        bellzone::StateParam(config->alpha), config->samples, config->seed,
        config->workers, bellzone::EmitConfig{}};
    if (config->points_path) cpp_config.emit.points_path = config->points_path;
    if (config->zone3_path) cpp_config.emit.zone3_path = config->zone3_path;
    if (config->corr_e_path) cpp_config.emit.corr_e_path = config->corr_e_path;
    if (config->corr_c_path) cpp_config.emit.corr_c_path = config->corr_c_path;
    cpp_config.emit.every = config->emit_every == 0 ? 1 : config->emit_every;
    fill_summary(bellzone::scan(cpp_config), out);
  });
}

bz_status bz_alpha_sweep(const double* alphas, size_t n_alphas,
                         uint64_t samples, uint64_t seed, int workers,
                         bz_scan_summary* out_rows) {
  return guarded([&] {
    require(alphas != nullptr && out_rows != nullptr && n_alphas > 0,
            "alphas/out_rows is null or empty");
    std::vector<bellzone::StateParam> params;
    params.reserve(n_alphas);
    for (size_t i = 0; i < n_alphas; ++i) {
      params.emplace_back(alphas[i]);
    }
    const std::vector<bellzone::ScanSummary> rows =
        bellzone::alpha_sweep(params, samples, seed, workers);
    for (size_t i = 0; i < rows.size(); ++i) {
      fill_summary(rows[i], &out_rows[i]);
    }
  });
}

bz_status bz_sample_setting(uint64_t seed, uint64_t index, double alpha,
                            bz_setting* out) {
  return guarded([&] {
    require(out != nullptr, "out is null");
    *out = from_setting(bellzone::sample_setting(
        seed, index, bellzone::StateParam(alpha)));
  });
}

bz_status bz_optimize(bz_goal_kind goal, double alpha,
                      const bz_opt_budget* budget, uint64_t seed,
                      bz_opt_result* out) {
  return guarded([&] {
    require(out != nullptr, "out is null");
    *out = from_opt_result(
        bellzone::optimize({to_goal(goal), bellzone::StateParam(alpha)},
                           to_budget(budget), seed));
  });
}

bz_status bz_zone3_boundary(double alpha, const bz_opt_budget* budget,
                            uint64_t seed, bz_opt_result* out) {
  return guarded([&] {
    require(out != nullptr, "out is null");
    *out = from_opt_result(bellzone::zone3_boundary(
        bellzone::StateParam(alpha), to_budget(budget), seed));
  });
}

bz_status bz_find_extremal(bz_goal_kind goal, double alpha, uint32_t count,
                           double distinctness_tol,
                           const bz_opt_budget* budget, uint64_t seed,
                           bz_opt_result* out, uint32_t* n_out) {
  return guarded([&] {
    require(out != nullptr && n_out != nullptr, "out/n_out is null");
    require(count > 0, "count must be >= 1");
    const std::vector<bellzone::OptimizeResult> results =
        bellzone::find_extremal_settings(
            {to_goal(goal), bellzone::StateParam(alpha)},
            static_cast<int>(count), distinctness_tol, to_budget(budget),
            seed);
    *n_out = static_cast<uint32_t>(results.size());
    for (size_t i = 0; i < results.size(); ++i) {
      out[i] = from_opt_result(results[i]);
    }
  });
}

bz_status bz_find_triple_violations(
    bz_triple_mode mode, double alpha, uint64_t scan_samples,
    uint32_t refine_iterations, uint32_t max_results, uint64_t seed,
    const bz_setting* hints, uint32_t n_hints, bz_setting* out_settings,
    bz_triple_result* out_reports, uint32_t* n_out) {
  return guarded([&] {
    require(out_settings != nullptr && n_out != nullptr,
            "out_settings/n_out is null");
    require(max_results > 0, "max_results must be >= 1");
    require(mode == BZ_TRIPLE_E_ONLY || mode == BZ_TRIPLE_BOTH,
            "unknown triple mode");
    std::vector<bellzone::MeasurementSetting> hint_settings;
    for (uint32_t i = 0; i < n_hints; ++i) {
      require(hints != nullptr, "hints is null with n_hints > 0");
      hint_settings.push_back(to_setting(hints[i]));
    }
    bellzone::TripleSearchBudget budget;
    budget.scan_samples = scan_samples;
    if (refine_iterations > 0) {
      budget.refine_iterations = static_cast<int>(refine_iterations);
    }
    budget.max_results = static_cast<int>(max_results);
    const auto found = bellzone::find_triple_violations(
        mode == BZ_TRIPLE_E_ONLY ? bellzone::TripleMode::e_only
                                 : bellzone::TripleMode::both,
        bellzone::StateParam(alpha), budget, seed, hint_settings);
    *n_out = static_cast<uint32_t>(found.size());
    for (size_t i = 0; i < found.size(); ++i) {
      out_settings[i] = from_setting(found[i].first);
      if (out_reports != nullptr) {
        for (size_t c = 0; c < 3; ++c) {
          out_reports[i].per_class[c] =
              from_report(found[i].second.per_class[c]);
        }
        out_reports[i].all_e_contextual =
            found[i].second.all_e_contextual ? 1 : 0;
        out_reports[i].all_both_contextual =
            found[i].second.all_both_contextual ? 1 : 0;
      }
    }
  });
}

bz_status bz_simulate_runs(const bz_setting* setting, uint64_t n,
                           uint64_t seed, bz_run_log** out) {
  return guarded([&] {
    require(setting != nullptr && out != nullptr, "setting/out is null");
    auto log = std::make_unique<bz_run_log>();
    log->log = bellzone::simulate_runs(to_setting(*setting), n, seed);
    *out = log.release();
  });
}

bz_status bz_run_log_read_file(const char* path, bz_run_log** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "path/out is null");
    auto log = std::make_unique<bz_run_log>();
    log->log = bellzone::ingest_runs_file(path);
    *out = log.release();
  });
}

bz_status bz_run_log_parse(const char* data, size_t size, bz_run_log** out) {
  return guarded([&] {
    require(data != nullptr && out != nullptr, "data/out is null");
    auto log = std::make_unique<bz_run_log>();
    log->log = bellzone::ingest_runs(std::string(data, size));
    *out = log.release();
  });
}

bz_status bz_run_log_write_file(const bz_run_log* log, const char* path) {
  return guarded([&] {
    require(log != nullptr && path != nullptr, "log/path is null");
    bellzone::emit_runs_file(log->log, path);
  });
}

bz_status bz_run_log_to_string(const bz_run_log* log, char** out,
                               size_t* out_size) {
  return guarded([&] {
    require(log != nullptr && out != nullptr && out_size != nullptr,
            "log/out is null");
    const std::string text = bellzone::emit_runs_string(log->log);
    char* buffer = new char[text.size() + 1];
    std::memcpy(buffer, text.data(), text.size());
    buffer[text.size()] = '\0';
    *out = buffer;
    *out_size = text.size();
  });
}

void bz_string_free(char* buffer) { delete[] buffer; }

uint64_t bz_run_log_size(const bz_run_log* log) {
  return log == nullptr ? 0 : log->log.records.size();
}

bz_status bz_run_log_record(const bz_run_log* log, uint64_t index,
                            uint8_t out_xyab[4]) {
  return guarded([&] {
    require(log != nullptr && out_xyab != nullptr, "log/out is null");
    require(index < log->log.records.size(), "record index out of range");
    const bellzone::RunRecord& r = log->log.records[index];
    out_xyab[0] = r.x;
    out_xyab[1] = r.y;
    out_xyab[2] = r.a;
    out_xyab[3] = r.b;
  });
}

int bz_run_log_has_metadata(const bz_run_log* log) {
  return log != nullptr && log->log.metadata.has_value() ? 1 : 0;
}

bz_status bz_run_log_metadata(const bz_run_log* log, bz_setting* out_setting,
                              uint64_t* out_seed) {
  return guarded([&] {
    require(log != nullptr, "log is null");
    require(log->log.metadata.has_value(), "log has no metadata");
    const bellzone::RunMetadata& meta = *log->log.metadata;
    if (out_setting != nullptr) {
      out_setting->alpha = meta.alpha;
      std::copy(meta.angles.begin(), meta.angles.end(), out_setting->theta);
    }
    if (out_seed != nullptr) *out_seed = meta.seed;
  });
}

void bz_run_log_free(bz_run_log* log) { delete log; }

bz_status bz_estimate(const bz_run_log* log, bz_estimate_result* out) {
  return guarded([&] {
    require(log != nullptr && out != nullptr, "log/out is null");
    const bellzone::EmpiricalEstimate estimate = bellzone::estimate(log->log);
    for (size_t c = 0; c < 4; ++c) {
      out->context_counts[c] = estimate.context_counts[c];
      const auto& cells = estimate.contexts[c].cells();
      std::copy(cells.begin(), cells.end(), out->context_p + 4 * c);
    }
    out->report = from_report(estimate.report);
    out->jackknife_chsh = estimate.jackknife_chsh;
    out->jackknife_chsh_e = estimate.jackknife_chsh_e;
  });
}

}  // extern "C"
