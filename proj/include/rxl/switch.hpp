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

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "rxl/error_model.hpp"
#include "rxl/fec_rs.hpp"
#include "rxl/link_layer.hpp"
#include "rxl/rng.hpp"

namespace rxl {

struct SwitchConfig {
  ProtocolMode mode = ProtocolMode::kCxlBaseline;
  double internal_error_prob = 0.0;
  // Baseline only: terminate the link CRC at the switch (check on ingress,
  // regenerate on egress). RXL switches never touch the CRC.
  bool terminate_link_crc = true;
};

enum class DropReason : uint8_t { kFecUncorrectable, kCrcFail };
std::string_view to_string(DropReason reason);

// Drop reports go to the log only; they never trigger recovery.
struct SwitchLog {
  std::size_t forwarded = 0;
  std::size_t fec_corrected = 0;
  std::size_t dropped_fec = 0;
  std::size_t dropped_crc = 0;
  std::size_t internal_corruptions = 0;
};

struct SwitchResult {
  bool forwarded = false;
  WireFlit wire{};                    // valid when forwarded
  DropReason reason = DropReason::kFecUncorrectable;  // valid when dropped
  fec::FlitVerdict fec_verdict = fec::FlitVerdict::kClean;
  ErrorMask internal_mask;            // ground truth of switch-internal corruption
};

// Flow-stateless intermediate node: FEC decode, drop or forward, FEC re-encode.
class Switch {
 public:
  explicit Switch(SwitchConfig cfg, const Crc64& crc = Crc64::ecma182());

  const SwitchConfig& config() const { return cfg_; }
  const SwitchLog& log() const { return log_; }

  SwitchResult forward(const WireFlit& wire, SplitMix64& rng, bool force_internal_corrupt = false);

 private:
  SwitchConfig cfg_;
  const Crc64* crc_;
  SwitchLog log_;
};

// 1-8 uniformly placed bit flips inside the 250-byte core.
ErrorMask internal_corruption_mask(SplitMix64& rng);

}  // namespace rxl
