// SPDX-License-Identifier: Apache-2.0

// Counter-based random stream built on the SplitMix64 output function.
// Output i of the stream with a given seed is mix64(seed + (i+1)*GAMMA),
// which allows O(1) random access: workers can consume disjoint index
// ranges and still produce bit-identical sequences. Pure 64-bit integer
// arithmetic, so the streams are platform-independent.

#pragma once

#include <cstdint>

namespace bellzone {

inline constexpr uint64_t kSplitMixGamma = 0x9E3779B97F4A7C15ull;

// SplitMix64 finalizer (Steele, Lea, Flood 2014).
inline uint64_t mix64(uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

// Output `index` of the stream identified by `seed`.
inline uint64_t counter_output(uint64_t seed, uint64_t index) {
  return mix64(seed + (index + 1) * kSplitMixGamma);
}

// Uniform double in [0, 1) from the top 53 bits.
inline double to_unit(uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Independent child seed for substreams (alpha-sweep rows, run simulation);
// uses a distinct multiplier so child streams do not alias the parent.
inline uint64_t derive_seed(uint64_t seed, uint64_t salt) {
  return mix64(seed ^ (0xD1B54A32D192ED03ull * (salt + 1)));
}

}  // namespace bellzone
