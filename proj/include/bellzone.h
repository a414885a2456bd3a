/* SPDX-License-Identifier: Apache-2.0 */

/* bellzone.h -- C interface to the bellzone shared library.
 *
 * bellzone evaluates bipartite qubit measurement settings against the
 * correlative CHSH inequality and its entropic counterpart, classifies
 * them into four contextuality zones, applies observable relabelings and
 * party reassignments, tests local-hidden-variable feasibility, and runs
 * seeded Monte Carlo scans and derivative-free searches over the
 * four-angle parameter space.
 *
 * Conventions used throughout:
 *   - The shared state is cos(alpha)|00> + sin(alpha)|11>, alpha in [0, pi/4].
 *   - Observables are sin(theta) sigma_Y + cos(theta) sigma_Z; the four
 *     angles are indexed X1..X4 = (A0, A1, B0, B1) in `theta[0..3]`.
 *   - Outcome bit 0 corresponds to eigenvalue +1.
 *   - CHSH is reported as |S1| with S1 = E00 + E01 + E10 - E11; CHSH_E is
 *     the signed canonical entropic combination (positive iff violated).
 *   - Entropies are base-2 (bits).
 *
 * All functions return bz_status; BZ_OK is 0. On failure,
 * bz_last_error_message() returns a thread-local description of the most
 * recent error. Unless noted otherwise the functions are pure and safe to
 * call concurrently from any number of threads.
 */

#ifndef BELLZONE_H
#define BELLZONE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define BZ_API __declspec(dllexport)
#else
#define BZ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bz_status {
  BZ_OK = 0,
  BZ_ERR_INVALID_ARGUMENT = 1, /* null pointer, bad enum value, zero budget */
  BZ_ERR_DOMAIN = 2,           /* numeric input outside its documented domain */
  BZ_ERR_IO = 3,               /* file could not be opened/read/written */
  BZ_ERR_PARSE = 4,            /* malformed run-log input */
  BZ_ERR_MISSING_CONTEXT = 5,  /* run log lacks at least one (x,y) cell */
  BZ_ERR_INTERNAL = 6
} bz_status;

/* Library version, e.g. "0.1.0". */
BZ_API const char* bz_version(void);

/* Short name for a status code ("ok", "domain", ...). */
BZ_API const char* bz_status_name(bz_status status);

/* Thread-local message describing the last error raised on this thread. */
BZ_API const char* bz_last_error_message(void);

/* ------------------------------------------------------------------ */
/* Settings and reports                                               */
/* ------------------------------------------------------------------ */

/* A point in parameter space: state parameter and the four measurement
 * angles (radians). theta[0..3] = A0, A1, B0, B1. */
typedef struct bz_setting {
  double alpha;
  double theta[4];
} bz_setting;

/* Evaluation of one setting under one party assignment.
 * s[0..3] are the four sign variants of the CHSH expression (minus sign on
 * E11, E10, E01, E00 respectively); t[0..3] are the entropic variants in
 * the order t11, t10, t01, t00. correlators[0..3] = E00, E01, E10, E11. */
typedef struct bz_report {
  double chsh;   /* |s[0]| */
  double chsh_e; /* t[0], signed */
  int zone;      /* 1..4 */
  double s[4];
  double t[4];
  double correlators[4];
} bz_report;

/* Two-point correlator <A(phi_a) x B(phi_b)> on the state. */
BZ_API bz_status bz_correlator(double phi_a, double phi_b, double alpha,
                               double* out);

/* Single-observable expectation cos(2 alpha) cos(phi). */
BZ_API bz_status bz_marginal_expectation(double phi, double alpha,
                                         double* out);

/* Born-rule outcome distribution for one context.
 * out_p[0..3] = P(0,0), P(0,1), P(1,0), P(1,1). */
BZ_API bz_status bz_joint_distribution(double phi_a, double phi_b,
                                       double alpha, double out_p[4]);

/* Zone from the two canonical values: 1 = neither inequality violated,
 * 2 = entropic only, 3 = both, 4 = correlative only. Boundaries are
 * classical (chsh <= 2, chsh_e <= 0 count as unviolated). */
BZ_API bz_status bz_classify_zone(double chsh, double chsh_e, int* out_zone);

/* Evaluate a setting under party assignment class 1, 2 or 3. */
BZ_API bz_status bz_evaluate(const bz_setting* setting, int class_id,
                             bz_report* out);

/* The four context distributions for a class, 16 cells in context order
 * (A'0,B'0), (A'0,B'1), (A'1,B'0), (A'1,B'1), each P(0,0..1,1). */
BZ_API bz_status bz_contexts(const bz_setting* setting, int class_id,
                             double out_p[16]);

/* ------------------------------------------------------------------ */
/* Permutations and hidden-variable feasibility                       */
/* ------------------------------------------------------------------ */

/* Classify a permutation of the four observables relative to a class.
 * perm[i] = j means slot i of the relabeled setting holds observable j
 * (0-based X indices). scenario_preserving is set to 1 when the relabeling
 * keeps the class's party partition; otherwise 0 with target_class set to
 * the class whose partition the image equals. */
BZ_API bz_status bz_classify_permutation(const int perm[4], int class_id,
                                         int* scenario_preserving,
                                         int* target_class);

typedef struct bz_perm_entry {
  int perm[4];
  int swaps_parties; /* 1 when the relabeling exchanges the two parties */
  bz_report report;  /* canonical inequalities on the relabeled setting */
} bz_perm_entry;

/* Evaluate the canonical inequalities under all 8 scenario-preserving
 * relabelings of the class (the identity is entry 0). For a zone-2 input,
 * *zone4_index receives the index of the unique within-party relabeling
 * that lands in zone 4, or -1 when no entry does. */
BZ_API bz_status bz_forbidden_sweep(const bz_setting* setting, int class_id,
                                    bz_perm_entry out[8], int* zone4_index);

typedef struct bz_triple_result {
  bz_report per_class[3]; /* classes 1, 2, 3 */
  int all_e_contextual;   /* chsh_e > 0 in every class */
  int all_both_contextual; /* additionally chsh > 2 in every class */
} bz_triple_result;

/* Evaluate a setting under all three party assignments. */
BZ_API bz_status bz_triple_check(const bz_setting* setting,
                                 bz_triple_result* out);

typedef struct bz_lhv_result {
  int feasible;        /* convex combination of the 16 deterministic
                          strategies reproduces the quad (LP verdict) */
  int boundary;        /* facet margin within 1e-9 of the classical bound */
  double facet_margin; /* 2 - max_i |s_i| */
  double weights[16];  /* witness model when feasible; strategy index is
                          a0 | a1<<1 | b0<<2 | b1<<3 */
} bz_lhv_result;

/* Local-hidden-variable feasibility of a no-signalling quad given as 16
 * cells in the bz_contexts() layout. */
BZ_API bz_status bz_lhv_check(const double quad_p[16], bz_lhv_result* out);

/* Convenience: feasibility of the quad induced by a setting and class. */
BZ_API bz_status bz_lhv_check_setting(const bz_setting* setting, int class_id,
                                      bz_lhv_result* out);

/* ------------------------------------------------------------------ */
/* Monte Carlo scans                                                  */
/* ------------------------------------------------------------------ */

typedef struct bz_scan_config {
  double alpha;
  uint64_t samples;
  uint64_t seed;
  int workers; /* <= 0 selects the hardware thread count */
  /* Optional point emission; NULL disables a file. Formats:
   *   points_path, zone3_path:        header "chsh,chsh_e,zone"
   *   corr_e_path, corr_c_path:       header "e00,e01,e10,e11,chsh,chsh_e"
   * emit_every = k keeps every k-th eligible sample (0 behaves as 1). */
  const char* points_path;
  const char* zone3_path;
  const char* corr_e_path;
  const char* corr_c_path;
  uint64_t emit_every;
} bz_scan_config;

typedef struct bz_scan_summary {
  double alpha;
  uint64_t samples;
  uint64_t seed;
  uint64_t zone_counts[4];
  double zone_fractions[4];
} bz_scan_summary;

/* Classify `samples` settings drawn i.i.d. uniform over [0,2pi)^4 under
 * class 1. Bit-identical results for fixed (alpha, samples, seed)
 * regardless of worker count. */
BZ_API bz_status bz_scan(const bz_scan_config* config, bz_scan_summary* out);

/* One scan row per alpha; row r uses a substream derived from (seed, r). */
BZ_API bz_status bz_alpha_sweep(const double* alphas, size_t n_alphas,
                                uint64_t samples, uint64_t seed, int workers,
                                bz_scan_summary* out_rows);

/* The deterministic sample stream underlying bz_scan. */
BZ_API bz_status bz_sample_setting(uint64_t seed, uint64_t index, double alpha,
                                   bz_setting* out);

/* ------------------------------------------------------------------ */
/* Optimization                                                       */
/* ------------------------------------------------------------------ */

typedef enum bz_goal_kind {
  BZ_GOAL_MAX_CHSH = 0,
  BZ_GOAL_MAX_CHSH_E = 1,
  BZ_GOAL_MAX_CHSH_IN_ZONE3 = 2,
  BZ_GOAL_MIN_CHSH_E_AT_MAX_CHSH = 3
} bz_goal_kind;

/* Pass NULL wherever a budget is expected to use the defaults
 * (256 starts, 500 iterations, tolerance 1e-10). Explicit zero fields are
 * rejected with BZ_ERR_INVALID_ARGUMENT. */
typedef struct bz_opt_budget {
  uint32_t starts;
  uint32_t iterations;
  double tolerance;
} bz_opt_budget;

typedef struct bz_opt_result {
  bz_setting setting;
  double value;
  bz_report report;
  uint32_t starts;
  int converged;
  int feasible; /* 0 when a constrained goal found no feasible point */
} bz_opt_result;

/* Multi-start derivative-free maximization of the goal functional. */
BZ_API bz_status bz_optimize(bz_goal_kind goal, double alpha,
                             const bz_opt_budget* budget, uint64_t seed,
                             bz_opt_result* out);

/* Supremum of CHSH over the e-contextual region (zone 3 boundary). */
BZ_API bz_status bz_zone3_boundary(double alpha, const bz_opt_budget* budget,
                                   uint64_t seed, bz_opt_result* out);

/* Up to `count` distinct local maximizers, pairwise separated by at least
 * distinctness_tol in angle space after quotienting by angle wrap and the
 * 8 scenario-preserving relabelings. Writes the number found to *n_out. */
BZ_API bz_status bz_find_extremal(bz_goal_kind goal, double alpha,
                                  uint32_t count, double distinctness_tol,
                                  const bz_opt_budget* budget, uint64_t seed,
                                  bz_opt_result* out, uint32_t* n_out);

typedef enum bz_triple_mode {
  BZ_TRIPLE_E_ONLY = 0, /* chsh_e > 0 in all three classes */
  BZ_TRIPLE_BOTH = 1    /* additionally chsh > 2 in all three classes */
} bz_triple_mode;

/* Search for settings whose three party assignments all violate the
 * entropic inequality (and, in mode BOTH, the correlative one as well).
 * Scans `scan_samples` seeded settings, refines the most promising
 * candidates, and returns up to max_results hits. `hints` (may be NULL)
 * seeds the candidate list with explicit settings. Finding nothing is not
 * an error: *n_out is 0. */
BZ_API bz_status bz_find_triple_violations(
    bz_triple_mode mode, double alpha, uint64_t scan_samples,
    uint32_t refine_iterations, uint32_t max_results, uint64_t seed,
    const bz_setting* hints, uint32_t n_hints, bz_setting* out_settings,
    bz_triple_result* out_reports, uint32_t* n_out);

/* ------------------------------------------------------------------ */
/* Run logs (finite statistics)                                       */
/* ------------------------------------------------------------------ */

/* Opaque sequence of per-run records (x, y, a, b). */
typedef struct bz_run_log bz_run_log;

/* Simulate n runs of the class-1 experiment with inputs x, y i.i.d.
 * uniform and outcomes drawn from the selected context distribution.
 * The log is a pure function of (setting, n, seed). */
BZ_API bz_status bz_simulate_runs(const bz_setting* setting, uint64_t n,
                                  uint64_t seed, bz_run_log** out);

/* Parse the run-log CSV format: optional "# key=value" metadata comment
 * lines, an exact "x,y,a,b" header, then one record per line. Malformed
 * input fails with BZ_ERR_PARSE and a message carrying the 1-based line
 * number. */
BZ_API bz_status bz_run_log_read_file(const char* path, bz_run_log** out);
BZ_API bz_status bz_run_log_parse(const char* data, size_t size,
                                  bz_run_log** out);

/* Write the log in the same format (LF line endings, no quoting). */
BZ_API bz_status bz_run_log_write_file(const bz_run_log* log,
                                       const char* path);

/* Serialize the log; *out receives a NUL-terminated buffer of *out_size
 * bytes (excluding the terminator) to release with bz_string_free. */
BZ_API bz_status bz_run_log_to_string(const bz_run_log* log, char** out,
                                      size_t* out_size);
BZ_API void bz_string_free(char* buffer);

BZ_API uint64_t bz_run_log_size(const bz_run_log* log);
BZ_API bz_status bz_run_log_record(const bz_run_log* log, uint64_t index,
                                   uint8_t out_xyab[4]);

/* Provenance block, present on simulated logs. */
BZ_API int bz_run_log_has_metadata(const bz_run_log* log);
BZ_API bz_status bz_run_log_metadata(const bz_run_log* log,
                                     bz_setting* out_setting,
                                     uint64_t* out_seed);

BZ_API void bz_run_log_free(bz_run_log* log);

typedef struct bz_estimate_result {
  uint64_t context_counts[4]; /* records per (x,y) */
  double context_p[16];       /* empirical cells, bz_contexts() layout */
  bz_report report;           /* plug-in values and zone */
  /* Root-mean-square deviation of tenth-size block estimates from the
   * full-sample estimate; always >= 0. */
  double jackknife_chsh;
  double jackknife_chsh_e;
} bz_estimate_result;

/* Plug-in estimate of all functionals from a run log. Every (x,y) context
 * must occur at least once; otherwise BZ_ERR_MISSING_CONTEXT. */
BZ_API bz_status bz_estimate(const bz_run_log* log, bz_estimate_result* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* BELLZONE_H */
