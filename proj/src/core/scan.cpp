// SPDX-License-Identifier: Apache-2.0

#include "scan.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "errors.hpp"
#include "rng.hpp"

namespace bellzone {

namespace {

constexpr uint64_t kChunk = 32768;

int resolve_workers(int workers) {
  if (workers > 0) return workers;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

struct EmitBuffers {
  std::string points, zone3, corr_e, corr_c;
};

void append_point(std::string& out, double chsh, double chsh_e, Zone zone) {
  char line[64];
  std::snprintf(line, sizeof line, "%.6f,%.6f,%d\n", chsh, chsh_e,
                static_cast<int>(zone));
  out += line;
}

void append_correlators(std::string& out, const std::array<double, 4>& e,
                        double chsh, double chsh_e) {
  char line[128];
  std::snprintf(line, sizeof line, "%.6f,%.6f,%.6f,%.6f,%.6f,%.6f\n", e[0],
                e[1], e[2], e[3], chsh, chsh_e);
  out += line;
}

// Classify the index range [begin, end); fill zone counts and, when
// emitting, the per-range line buffers.
void scan_range(const ScanConfig& config, uint64_t begin, uint64_t end,
                std::array<uint64_t, 4>& counts, EmitBuffers* buffers) {
  const uint64_t every = std::max<uint64_t>(1, config.emit.every);
  const bool emitting = buffers != nullptr && config.emit.any();
  for (uint64_t index = begin; index < end; ++index) {
    const MeasurementSetting setting =
        sample_setting(config.seed, index, config.alpha);
    const ZoneReport report = evaluate_class(setting, ClassId::k1);
    counts[static_cast<size_t>(report.zone) - 1]++;
    if (!emitting || index % every != 0) continue;
    if (!config.emit.points_path.empty()) {
      append_point(buffers->points, report.chsh, report.chsh_e, report.zone);
    }
    if (!config.emit.zone3_path.empty() && report.zone == Zone::z3) {
      append_point(buffers->zone3, report.chsh, report.chsh_e, report.zone);
    }
    if (!config.emit.corr_e_path.empty() && report.chsh_e > 0.0) {
      append_correlators(buffers->corr_e, report.correlators, report.chsh,
                         report.chsh_e);
    }
    if (!config.emit.corr_c_path.empty() && report.chsh > 2.0) {
      append_correlators(buffers->corr_c, report.correlators, report.chsh,
                         report.chsh_e);
    }
  }
}

class EmitFile {
 public:
  EmitFile(const std::string& path, const char* header) : path_(path) {
    if (path.empty()) return;
    stream_.open(path, std::ios::binary | std::ios::trunc);
    if (!stream_) throw IoError("cannot open " + path + " for writing");
    stream_ << header << '\n';
  }

  void append(const std::string& chunk) {
    if (path_.empty() || chunk.empty()) return;
    stream_.write(chunk.data(), static_cast<std::streamsize>(chunk.size()));
  }

  void close() {
    if (path_.empty()) return;
    stream_.flush();
    if (!stream_) throw IoError("write failed on " + path_);
    stream_.close();
  }

 private:
  std::string path_;
  std::ofstream stream_;
};

}  // namespace

std::array<double, 4> ScanSummary::zone_fractions() const {
  std::array<double, 4> fractions{};
  if (samples == 0) return fractions;
  for (size_t z = 0; z < 4; ++z) {
    fractions[z] =
        static_cast<double>(zone_counts[z]) / static_cast<double>(samples);
  }
  return fractions;
}

MeasurementSetting sample_setting(uint64_t seed, uint64_t index,
                                  const StateParam& alpha) {
  std::array<double, 4> angles{};
  for (uint64_t k = 0; k < 4; ++k) {
    angles[k] = kTwoPi * to_unit(counter_output(seed, 4 * index + k));
  }
  return MeasurementSetting{{Observable(angles[0]), Observable(angles[1]),
                             Observable(angles[2]), Observable(angles[3])},
                            alpha};
}

ScanSummary scan(const ScanConfig& config) {
  if (config.samples == 0) {
    throw std::invalid_argument("scan requires samples >= 1");
  }
  const int workers = resolve_workers(config.workers);
  const bool emitting = config.emit.any();

  EmitFile points(config.emit.points_path, "chsh,chsh_e,zone");
  EmitFile zone3(config.emit.zone3_path, "chsh,chsh_e,zone");
  EmitFile corr_e(config.emit.corr_e_path, "e00,e01,e10,e11,chsh,chsh_e");
  EmitFile corr_c(config.emit.corr_c_path, "e00,e01,e10,e11,chsh,chsh_e");

  ScanSummary summary;
  summary.alpha = config.alpha.alpha();
  summary.samples = config.samples;
  summary.seed = config.seed;

  const uint64_t n_chunks = (config.samples + kChunk - 1) / kChunk;
  // Chunks are processed in generations of `workers` and their buffers
  // flushed in chunk order, which keeps the output byte-identical for any
  // worker count while bounding emission memory.
  for (uint64_t generation = 0; generation * workers < n_chunks;
       ++generation) {
    const uint64_t first = generation * workers;
    const uint64_t count =
        std::min<uint64_t>(static_cast<uint64_t>(workers), n_chunks - first);
    std::vector<std::array<uint64_t, 4>> counts(count, {0, 0, 0, 0});
    std::vector<EmitBuffers> buffers(emitting ? count : 0);
    std::vector<std::thread> threads;
    threads.reserve(count);
    for (uint64_t w = 0; w < count; ++w) {
      const uint64_t begin = (first + w) * kChunk;
      const uint64_t end = std::min(config.samples, begin + kChunk);
      threads.emplace_back([&, w, begin, end] {
        scan_range(config, begin, end, counts[w],
                   emitting ? &buffers[w] : nullptr);
      });
    }
    for (std::thread& thread : threads) thread.join();
    for (uint64_t w = 0; w < count; ++w) {
      for (size_t z = 0; z < 4; ++z) summary.zone_counts[z] += counts[w][z];
      if (emitting) {
        points.append(buffers[w].points);
        zone3.append(buffers[w].zone3);
        corr_e.append(buffers[w].corr_e);
        corr_c.append(buffers[w].corr_c);
      }
    }
  }

  points.close();
  zone3.close();
  corr_e.close();
  corr_c.close();
  return summary;
}

std::vector<ScanSummary> alpha_sweep(std::span<const StateParam> alphas,
                                     uint64_t samples, uint64_t seed,
                                     int workers) {
  // Every row re-evaluates the same seeded angle stream at its alpha
  // (common random numbers), so a single-row sweep matches a plain scan.
  std::vector<ScanSummary> rows;
  rows.reserve(alphas.size());
  for (const StateParam& alpha : alphas) {
    ScanConfig config{alpha, samples, seed, workers, {}};
    rows.push_back(scan(config));
  }
  return rows;
}

}  // namespace bellzone
