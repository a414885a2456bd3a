// SPDX-License-Identifier: Apache-2.0

#include "runs.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "errors.hpp"
#include "rng.hpp"

namespace bellzone {

namespace {

constexpr char kHeader[] = "x,y,a,b";

using CellCounts = std::array<std::array<uint64_t, 4>, 4>;  // [context][cell]

void tally(const std::vector<RunRecord>& records, CellCounts& counts,
           int keep_modulus, int keep_residue) {
  for (size_t i = 0; i < records.size(); ++i) {
    if (keep_modulus > 1 &&
        static_cast<int>(i % static_cast<size_t>(keep_modulus)) !=
            keep_residue) {
      continue;
    }
    const RunRecord& r = records[i];
    counts[static_cast<size_t>(2 * r.x + r.y)]
          [static_cast<size_t>(2 * r.a + r.b)]++;
  }
}

struct QuadEstimate {
  std::array<uint64_t, 4> totals;
  std::array<JointDistribution, 4> contexts;
  ZoneReport report;
};

// Empirical quad from cell counts; nullopt when a context is empty.
std::optional<QuadEstimate> quad_from_counts(const CellCounts& counts) {
  std::array<uint64_t, 4> totals{};
  uint64_t min_total = UINT64_MAX;
  for (size_t c = 0; c < 4; ++c) {
    for (uint64_t cell : counts[c]) totals[c] += cell;
    min_total = std::min(min_total, totals[c]);
  }
  if (min_total == 0) return std::nullopt;

  std::array<std::array<double, 4>, 4> cells{};
  for (size_t c = 0; c < 4; ++c) {
    for (size_t k = 0; k < 4; ++k) {
      cells[c][k] = static_cast<double>(counts[c][k]) /
                    static_cast<double>(totals[c]);
    }
  }
  const double ns_tolerance = 5.0 / std::sqrt(static_cast<double>(min_total));
  const ContextQuad quad = ContextQuad::validated(
      {JointDistribution::from_cells(cells[0]),
       JointDistribution::from_cells(cells[1]),
       JointDistribution::from_cells(cells[2]),
       JointDistribution::from_cells(cells[3])},
      ns_tolerance);
  return QuadEstimate{totals, quad.contexts(), report_for_quad(quad)};
}

void append_double(std::string& out, const char* key, double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "# %s=%.17g\n", key, value);
  out += buffer;
}

}  // namespace

RunLog simulate_runs(const MeasurementSetting& setting, uint64_t n,
                     uint64_t seed) {
  if (n == 0) throw std::invalid_argument("simulate_runs requires n >= 1");

  const PartyAssignment assignment = PartyAssignment::canonical(ClassId::k1);
  const ContextQuad quad = contexts_for_assignment(setting, assignment);

  RunLog log;
  log.records.reserve(n);
  log.metadata = RunMetadata{setting.state.alpha(), setting.angles(), seed};
  for (uint64_t i = 0; i < n; ++i) {
    const uint8_t x =
        static_cast<uint8_t>(counter_output(seed, 3 * i) & 1u);
    const uint8_t y =
        static_cast<uint8_t>(counter_output(seed, 3 * i + 1) & 1u);
    const double u = to_unit(counter_output(seed, 3 * i + 2));
    const JointDistribution& d = quad.context(x, y);
    double cumulative = 0.0;
    uint8_t outcome = 3;  // lands on the last cell if u hits the fp slack
    for (uint8_t cell = 0; cell < 4; ++cell) {
      cumulative += d.cells()[cell];
      if (u < cumulative) {
        outcome = cell;
        break;
      }
    }
    log.records.push_back(RunRecord{x, y, static_cast<uint8_t>(outcome >> 1),
                                    static_cast<uint8_t>(outcome & 1)});
  }
  return log;
}

RunLog ingest_runs(const std::string& content) {
  RunLog log;
  std::optional<double> meta_alpha;
  std::optional<std::array<double, 4>> meta_angles;
  std::optional<uint64_t> meta_seed;

  size_t line_number = 0;
  size_t pos = 0;
  bool header_seen = false;
  while (pos < content.size()) {
    size_t eol = content.find('\n', pos);
    if (eol == std::string::npos) eol = content.size();
    const std::string line = content.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_number;

    if (!header_seen) {
      if (line.rfind('#', 0) == 0) {
        // Provenance comments; unknown keys are ignored.
        std::string body = line.substr(1);
        if (!body.empty() && body.front() == ' ') body.erase(0, 1);
        const size_t eq = body.find('=');
        if (eq != std::string::npos) {
          const std::string key = body.substr(0, eq);
          const std::string value = body.substr(eq + 1);
          try {
            if (key == "alpha") {
              meta_alpha = std::stod(value);
            } else if (key == "seed") {
              meta_seed = std::stoull(value);
            } else if (key == "angles") {
              std::array<double, 4> angles{};
              std::istringstream stream(value);
              std::string field;
              size_t k = 0;
              while (std::getline(stream, field, ',') && k < 4) {
                angles[k++] = std::stod(field);
              }
              if (k == 4) meta_angles = angles;
            }
          } catch (const std::exception&) {
            throw ParseError(line_number,
                             "bad metadata value in '" + line + "'");
          }
        }
        continue;
      }
      if (line != kHeader) {
        throw ParseError(line_number, "expected header '" +
                                          std::string(kHeader) + "', got '" +
                                          line + "'");
      }
      header_seen = true;
      continue;
    }

    if (line.empty()) {
      throw ParseError(line_number, "empty record line");
    }

    static constexpr const char* kFieldNames[4] = {"x", "y", "a", "b"};
    std::array<uint8_t, 4> fields{};
    size_t field_index = 0;
    size_t start = 0;
    while (true) {
      size_t comma = line.find(',', start);
      const std::string token =
          line.substr(start, comma == std::string::npos ? std::string::npos
                                                        : comma - start);
      if (field_index >= 4) {
        throw ParseError(line_number,
                         "too many fields in '" + line + "'");
      }
      if (token == "0") {
        fields[field_index] = 0;
      } else if (token == "1") {
        fields[field_index] = 1;
      } else {
        throw ParseError(line_number,
                         std::string("field ") + kFieldNames[field_index] +
                             " out of range in '" + line + "'");
      }
      ++field_index;
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (field_index != 4) {
      throw ParseError(line_number, "expected 4 fields, got " +
                                        std::to_string(field_index) + " in '" +
                                        line + "'");
    }
    log.records.push_back(
        RunRecord{fields[0], fields[1], fields[2], fields[3]});
  }

  if (!header_seen) {
    throw ParseError(std::max<size_t>(line_number, 1),
                     "empty input: missing 'x,y,a,b' header");
  }
  if (meta_alpha && meta_angles && meta_seed) {
    log.metadata = RunMetadata{*meta_alpha, *meta_angles, *meta_seed};
  }
  return log;
}

RunLog ingest_runs_file(const std::string& path) {
  std::ifstream stream(path, std::ios::binary);
  if (!stream) throw IoError("cannot open " + path + " for reading");
  std::ostringstream buffer;
  buffer << stream.rdbuf();
  return ingest_runs(buffer.str());
}

std::string emit_runs_string(const RunLog& log) {
  std::string out;
  out.reserve(16 + 8 * log.records.size());
  if (log.metadata) {
    append_double(out, "alpha", log.metadata->alpha);
    char buffer[160];
    std::snprintf(buffer, sizeof buffer,
                  "# angles=%.17g,%.17g,%.17g,%.17g\n",
                  log.metadata->angles[0], log.metadata->angles[1],
                  log.metadata->angles[2], log.metadata->angles[3]);
    out += buffer;
    std::snprintf(buffer, sizeof buffer, "# seed=%llu\n",
                  static_cast<unsigned long long>(log.metadata->seed));
    out += buffer;
  }
  out += kHeader;
  out += '\n';
  for (const RunRecord& r : log.records) {
    out += static_cast<char>('0' + r.x);
    out += ',';
    out += static_cast<char>('0' + r.y);
    out += ',';
    out += static_cast<char>('0' + r.a);
    out += ',';
    out += static_cast<char>('0' + r.b);
    out += '\n';
  }
  return out;
}

void emit_runs(const RunLog& log, std::ostream& out) {
  const std::string text = emit_runs_string(log);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

void emit_runs_file(const RunLog& log, const std::string& path) {
  std::ofstream stream(path, std::ios::binary | std::ios::trunc);
  if (!stream) throw IoError("cannot open " + path + " for writing");
  emit_runs(log, stream);
  stream.flush();
  if (!stream) throw IoError("write failed on " + path);
}

EmpiricalEstimate estimate(const RunLog& log) {
  if (log.records.empty()) {
    throw MissingContextError("run log is empty");
  }
  CellCounts counts{};
  tally(log.records, counts, 1, 0);

  std::string missing;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      uint64_t total = 0;
      for (uint64_t cell : counts[static_cast<size_t>(2 * x + y)]) {
        total += cell;
      }
      if (total == 0) {
        if (!missing.empty()) missing += ", ";
        missing += "(x=" + std::to_string(x) + ",y=" + std::to_string(y) + ")";
      }
    }
  }
  if (!missing.empty()) {
    throw MissingContextError("missing contexts: " + missing);
  }

  const QuadEstimate full = *quad_from_counts(counts);

  // Tenth-size block estimates (records taken round-robin by index mod 10);
  // blocks lacking a context are skipped.
  double sq_chsh = 0.0;
  double sq_chsh_e = 0.0;
  int valid_blocks = 0;
  for (int block = 0; block < 10; ++block) {
    CellCounts block_counts{};
    tally(log.records, block_counts, 10, block);
    const auto block_estimate = quad_from_counts(block_counts);
    if (!block_estimate) continue;
    const double d_chsh = block_estimate->report.chsh - full.report.chsh;
    const double d_chsh_e =
        block_estimate->report.chsh_e - full.report.chsh_e;
    sq_chsh += d_chsh * d_chsh;
    sq_chsh_e += d_chsh_e * d_chsh_e;
    ++valid_blocks;
  }

  EmpiricalEstimate result{full.totals, full.contexts, full.report, 0.0, 0.0};
  if (valid_blocks > 0) {
    result.jackknife_chsh = std::sqrt(sq_chsh / valid_blocks);
    result.jackknife_chsh_e = std::sqrt(sq_chsh_e / valid_blocks);
  }
  return result;
}

}  // namespace bellzone
