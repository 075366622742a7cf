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

#include <bitset>
#include <cstdint>

#include "rxl/flit_codec.hpp"
#include "rxl/rng.hpp"

namespace rxl {

struct ErrorConfig {
  double ber = 0.0;
  bool burst_enabled = false;
  double burst_start_prob = 0.0;  // per-bit probability of a burst seed
  double burst_mean_len = 1.0;    // geometric, in bits
  uint64_t seed = 0;

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

// Bit b of the mask is wire byte b / 8, bit (7 - b % 8): transmission
// order, most significant bit first.
using ErrorMask = std::bitset<kFlitBits>;

struct Corruption {
  WireFlit wire{};
  ErrorMask mask;
};

inline bool mask_bit_is_set(const WireFlit& diff, std::size_t b) {
  return (diff[b / 8] >> (7 - b % 8)) & 1u;
}

// Independent flips at cfg.ber, then (if enabled) geometric-length bursts
// seeded at cfg.burst_start_prob per bit. The output is input XOR mask.
Corruption corrupt_flit(const WireFlit& wire, const ErrorConfig& cfg, SplitMix64& rng);

void apply_mask(WireFlit& wire, const ErrorMask& mask);

}  // namespace rxl
