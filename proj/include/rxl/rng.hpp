// Copyright 2026 The RXL Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
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

namespace rxl {

// Counter-based SplitMix64. Output n is mix(seed + (n+1) * gamma), so the
// stream is a pure function of (seed, counter). split() derives an
// independent child stream keyed by a stream id.
class SplitMix64 {
 public:
  using result_type = uint64_t;
  static constexpr std::string_view kAlgorithm = "splitmix64";
  static constexpr uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  constexpr explicit SplitMix64(uint64_t seed = 0) : seed_(seed) {}

  static constexpr uint64_t mix(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  constexpr uint64_t operator()() { return mix(seed_ + ++counter_ * kGamma); }

  static constexpr uint64_t min() { return 0; }
  static constexpr uint64_t max() { return ~uint64_t{0}; }

  constexpr SplitMix64 split(uint64_t stream_id) const {
    return SplitMix64(mix(seed_ ^ mix(stream_id + kGamma)));
  }

  constexpr uint64_t seed() const { return seed_; }
  constexpr uint64_t counter() const { return counter_; }

  // Uniform in [0, 1) with 53 bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  // Uniform in (0, 1].
  double uniform_open0() { return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53; }

  // Uniform integer in [0, bound), bound > 0 (Lemire multiply-shift).
  uint64_t below(uint64_t bound) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>((*this)()) * bound) >> 64);
  }

  bool bernoulli(double p) { return p >= 1.0 || (p > 0.0 && uniform() < p); }

  // Number of failures before the first success, success probability p in (0, 1].
  // Saturates at UINT64_MAX/2 for p == 0.
  uint64_t geometric(double p) {
    if (p >= 1.0) return 0;
    if (p <= 0.0) return ~uint64_t{0} >> 1;
    const double g = std::floor(std::log(uniform_open0()) / std::log1p(-p));
    return g >= 9.0e18 ? (~uint64_t{0} >> 1) : static_cast<uint64_t>(g);
  }

 private:
  uint64_t seed_;
  uint64_t counter_ = 0;
};

}  // namespace rxl
