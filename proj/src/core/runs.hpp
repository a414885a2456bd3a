// SPDX-License-Identifier: Apache-2.0

// Finite-statistics layer: simulate per-run (x, y, a, b) records, read and
// write run-log CSV, and compute plug-in estimates of all functionals.
//
// Wire format: optional "# key=value" comment lines (alpha, angles, seed
// provenance), an exact "x,y,a,b" header, then one record per line. LF
// line endings, no quoting.

#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "info.hpp"
#include "quantum.hpp"
#include "scenario.hpp"

namespace bellzone {

struct RunRecord {
  uint8_t x, y, a, b;

  bool operator==(const RunRecord&) const = default;
};

struct RunMetadata {
  double alpha;
  std::array<double, 4> angles;
  uint64_t seed;

  bool operator==(const RunMetadata&) const = default;
};

struct RunLog {
  std::vector<RunRecord> records;
  std::optional<RunMetadata> metadata;

  bool operator==(const RunLog&) const = default;
};

// n runs of the class-1 experiment: inputs x, y i.i.d. uniform, outcomes
// drawn from the selected context distribution. Run i consumes counter
// outputs 3i..3i+2 of the stream, so the log is a pure function of
// (setting, n, seed).
RunLog simulate_runs(const MeasurementSetting& setting, uint64_t n,
                     uint64_t seed);

// Parse a run log; throws ParseError with the 1-based line number and the
// offending content, or IoError for unreadable files.
RunLog ingest_runs(const std::string& content);
RunLog ingest_runs_file(const std::string& path);

void emit_runs(const RunLog& log, std::ostream& out);
void emit_runs_file(const RunLog& log, const std::string& path);
std::string emit_runs_string(const RunLog& log);

struct EmpiricalEstimate {
  std::array<uint64_t, 4> context_counts;     // records per (x,y)
  std::array<JointDistribution, 4> contexts;  // empirical frequencies
  ZoneReport report;                          // plug-in values and zone
  // RMS deviation of tenth-size block estimates from the full-sample
  // estimate; always >= 0.
  double jackknife_chsh;
  double jackknife_chsh_e;
};

// Plug-in estimate. Every (x,y) context must occur at least once;
// otherwise MissingContextError listing the absent cells. The quad's
// no-signalling tolerance is relaxed to 5/sqrt(min context count).
EmpiricalEstimate estimate(const RunLog& log);

}  // namespace bellzone
