// Copyright 2026 The quditbp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file rng.hpp
 * Deterministic random sources. std::mt19937_64 provides the (fully
 * standard-specified) bit stream; the variate transforms are written out
 * here because std::*_distribution output is implementation-defined and the
 * output files must be reproducible from a seed alone.
 */
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace quditbp {

/// SplitMix64 finalizer; decorrelates consecutive integers into independent
/// 64-bit values.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Sub-seed for stream `salt` of a run keyed by `base`. Used to give every
/// Monte-Carlo sample its own seed so parallel schedules cannot change
/// results.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt) {
  return splitmix64(base ^ splitmix64(salt ^ 0xD1B54A32D192ED03ULL));
}

/// Seeded random source with portable variate transforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  /// Uniform double in [0, 1), 53 random bits.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform index in [0, n), unbiased (rejection below 2^64 mod n).
  std::size_t uniform_index(std::size_t n) {
    const std::uint64_t un = static_cast<std::uint64_t>(n);
    const std::uint64_t threshold = (-un) % un;
    std::uint64_t x = next_u64();
    while (x < threshold) x = next_u64();
    return static_cast<std::size_t>(x % un);
  }

  /// Standard normal via Box-Muller. No spare is cached so the draw count
  /// per call is fixed.
  double normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
    return r * std::cos(6.283185307179586476925286766559 * u2);
  }

  /// Complex Gaussian with independent N(0,1) real and imaginary parts.
  std::complex<double> normal_complex() {
    const double re = normal();
    const double im = normal();
    return {re, im};
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace quditbp
