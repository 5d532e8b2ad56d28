// Copyright 2026 The qcrowd authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace qcrowd {

/// 64-bit FNV-1a. Used for manifest/cache fingerprints and RNG stream
/// derivation; not cryptographic.
inline constexpr std::uint64_t fnv1a64(std::string_view data,
                                       std::uint64_t h = 0xcbf29ce484222325ull) {
  for (char c : data) {
    h ^= static_cast<std::uint8_t>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

inline constexpr std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Derives an independent sub-stream seed from (manifest seed, stream name,
/// index). All randomness in the toolkit flows through this, so a run is
/// reproducible from its single manifest seed.
inline std::uint64_t derive_stream(std::uint64_t seed, std::string_view name,
                                   std::uint64_t index = 0) {
  std::uint64_t s = seed ^ fnv1a64(name);
  std::uint64_t a = splitmix64(s);
  s ^= index * 0x9e3779b97f4a7c15ull;
  std::uint64_t b = splitmix64(s);
  return a ^ (b + 0x632be59bd9b4e019ull);
}

/// Small self-contained generator (xoshiro-free: splitmix64 chain) with the
/// variate recipes pinned so results are bit-identical across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() { return splitmix64(state_); }

  /// Uniform in [0, 1). 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller (one variate per pair of uniforms; the
  /// sibling variate is discarded to keep draw counts position-independent).
  double gaussian() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPiLocal * u2);
  }

  /// Poisson by summing unit exponentials until they exceed the mean.
  /// Exact distribution, O(lambda) uniforms, no underflow at large lambda.
  int poisson(double lambda) {
    if (lambda <= 0.0) return 0;
    double acc = 0.0;
    int k = -1;
    while (acc < lambda) {
      double u = uniform();
      while (u <= 0.0) u = uniform();
      acc += -std::log(u);
      ++k;
    }
    return k;
  }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    // Multiply-shift rejection-free mapping; bias < 2^-64, irrelevant here.
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

 private:
  static constexpr double kTwoPiLocal = 6.283185307179586476925286766559;
  std::uint64_t state_;
};

}  // namespace qcrowd
