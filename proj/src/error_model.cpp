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

#include "rxl/error_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rxl {
namespace {

void require_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string(name) + " must be in [0, 1], got " +
                                std::to_string(p));
  }
}

}  // namespace

void ErrorConfig::validate() const {
  require_probability(ber, "ber");
  require_probability(burst_start_prob, "burst_start_prob");
  if (!(burst_mean_len >= 1.0) || !std::isfinite(burst_mean_len)) {
    throw std::invalid_argument("burst_mean_len must be >= 1, got " +
                                std::to_string(burst_mean_len));
  }
}

Corruption corrupt_flit(const WireFlit& wire, const ErrorConfig& cfg, SplitMix64& rng) {
  Corruption out;
  out.wire = wire;
  if (cfg.ber > 0.0) {
    for (uint64_t b = rng.geometric(cfg.ber); b < kFlitBits; b += 1 + rng.geometric(cfg.ber)) {
      out.mask.set(b);
    }
  }
  if (cfg.burst_enabled && cfg.burst_start_prob > 0.0) {
    const double q = 1.0 / cfg.burst_mean_len;
    for (uint64_t b = rng.geometric(cfg.burst_start_prob); b < kFlitBits;
         b += 1 + rng.geometric(cfg.burst_start_prob)) {
      const uint64_t len = 1 + rng.geometric(q);
      for (uint64_t k = b; k < b + len && k < kFlitBits; ++k) out.mask.set(k);
    }
  }
  apply_mask(out.wire, out.mask);
  return out;
}

void apply_mask(WireFlit& wire, const ErrorMask& mask) {
  if (mask.none()) return;
  for (std::size_t b = 0; b < kFlitBits; ++b) {
    if (mask.test(b)) wire[b / 8] ^= static_cast<uint8_t>(0x80u >> (b % 8));
  }
}

}  // namespace rxl
