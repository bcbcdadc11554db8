/**************************************************************************************************
 * Apache License, Version 2.0
 * Copyright (c) 2026 the radixlab authors
 **************************************************************************************************/

#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace radixlab {

/// Name of the pinned generator, recorded in run manifests so results stay comparable.
inline constexpr const char* kGeneratorName = "splitmix64";

/// SplitMix64 finalizer (Steele/Lea/Vigna); a bijective 64-bit mix.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ull;
  }
  return h;
}

/// A deterministic single-owner random stream. The state advance is SplitMix64;
/// the starting state is a documented hash of (master_seed, experiment_tag,
/// trial_index), so any trial of any experiment can be replayed in isolation and
/// trials may run in any order or thread without changing their draws.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::string_view experiment_tag, std::uint64_t trial_index)
      : state_(mix64(mix64(mix64(master_seed) ^ fnv1a64(experiment_tag)) ^ trial_index)) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform on [0, 1) with the full 53 random bits of a double.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform on [-Z, Z].
  double uniform_sym(double Z) { return (2.0 * uniform01() - 1.0) * Z; }

  /// The experiments' scale factor 256^z with z uniform on [0, 1); spreads data
  /// over eight binades so no base 2^k (k | 8) is favored by the draw alignment.
  double scale_factor() { return std::exp2(8.0 * uniform01()); }

 private:
  std::uint64_t state_;
};

inline RngStream substream(std::uint64_t master_seed, std::string_view experiment_tag,
                           std::uint64_t trial_index) {
  return RngStream(master_seed, experiment_tag, trial_index);
}

}  // namespace radixlab
