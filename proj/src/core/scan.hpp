// SPDX-License-Identifier: Apache-2.0

// Seeded Monte Carlo scans over measurement settings: zone statistics,
// figure-data emission, and the alpha sweep. Results are bit-identical for
// a fixed (alpha, samples, seed) regardless of worker count.

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "quantum.hpp"
#include "scenario.hpp"

namespace bellzone {

// Point-file emission. Empty paths disable a file; `every` keeps each
// k-th eligible sample (indices where index % every == 0).
struct EmitConfig {
  std::string points_path;  // chsh,chsh_e,zone for every kept sample
  std::string zone3_path;   // same columns, zone-3 subset
  std::string corr_e_path;  // e00..e11,chsh,chsh_e where chsh_e > 0
  std::string corr_c_path;  // e00..e11,chsh,chsh_e where chsh > 2
  uint64_t every = 1;

  bool any() const {
    return !points_path.empty() || !zone3_path.empty() ||
           !corr_e_path.empty() || !corr_c_path.empty();
  }
};

struct ScanConfig {
  StateParam alpha;
  uint64_t samples = 0;
  uint64_t seed = 0;
  int workers = 0;  // <= 0 selects the hardware thread count
  EmitConfig emit;
};

struct ScanSummary {
  double alpha = 0.0;
  uint64_t samples = 0;
  uint64_t seed = 0;
  std::array<uint64_t, 4> zone_counts{};

  std::array<double, 4> zone_fractions() const;
};

// Setting `index` of the stream identified by `seed`: four i.i.d. uniform
// angles on [0, 2pi) consuming counter outputs 4*index .. 4*index+3.
MeasurementSetting sample_setting(uint64_t seed, uint64_t index,
                                  const StateParam& alpha);

// Classify `samples` sampled settings under class 1. Throws
// std::invalid_argument for samples == 0 and std::runtime_error naming the
// path on emission I/O failure.
ScanSummary scan(const ScanConfig& config);

// One summary row per alpha; row r runs on the substream derived from
// (seed, r).
std::vector<ScanSummary> alpha_sweep(std::span<const StateParam> alphas,
                                     uint64_t samples, uint64_t seed,
                                     int workers);

}  // namespace bellzone
