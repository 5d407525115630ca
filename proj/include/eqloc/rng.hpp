/*
 * Copyright 2026 The eqloc authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace eqloc {

// SplitMix64 (the SplittableRandom scheme): a 64-bit splittable generator.
// Substreams are derived deterministically from (seed, stream), so parallel
// workers reproduce bit-exactly for a fixed worker count on any platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(mix(seed)) {}

  SplitMix64(std::uint64_t seed, std::uint64_t stream)
      : state_(mix(mix(seed) + (stream + 1) * kGamma)) {}

  std::uint64_t next() {
    state_ += kGamma;
    return mix(state_);
  }

  // Uniform on [0, 1), 53-bit resolution.
  double next_double() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  // Uniform on (0, 1]; safe as a logarithm argument.
  double next_positive() { return 1.0 - next_double(); }

  // Standard normal via Box–Muller (no rejection, fully deterministic).
  double next_normal() {
    const double r = std::sqrt(-2.0 * std::log(next_positive()));
    const double phi = 2.0 * std::numbers::pi * next_double();
    return r * std::cos(phi);
  }

  std::complex<double> next_normal_complex() {
    const double r = std::sqrt(-2.0 * std::log(next_positive()));
    const double phi = 2.0 * std::numbers::pi * next_double();
    return {r * std::cos(phi), r * std::sin(phi)};
  }

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
  std::uint64_t state_;
};

// Default seed when neither the flag nor the environment provides one.
inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

}  // namespace eqloc
