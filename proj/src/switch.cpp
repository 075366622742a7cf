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

#include "rxl/switch.hpp"

namespace rxl {

std::string_view to_string(DropReason reason) {
  return reason == DropReason::kCrcFail ? "crc_fail" : "fec_uncorrectable";
}

ErrorMask internal_corruption_mask(SplitMix64& rng) {
  ErrorMask mask;
  const uint64_t flips = 1 + rng.below(8);
  while (mask.count() < flips) mask.set(rng.below(kCoreBytes * 8));
  return mask;
}

Switch::Switch(SwitchConfig cfg, const Crc64& crc) : cfg_(cfg), crc_(&crc) {}

SwitchResult Switch::forward(const WireFlit& wire, SplitMix64& rng, bool force_internal_corrupt) {
  SwitchResult out;
  const fec::FlitDecode decoded = fec::fec_decode_flit(wire);
  out.fec_verdict = decoded.verdict;
  if (decoded.verdict == fec::FlitVerdict::kDetectedUncorrectable) {
    ++log_.dropped_fec;
    out.reason = DropReason::kFecUncorrectable;
    return out;
  }
  if (decoded.verdict == fec::FlitVerdict::kCorrected) ++log_.fec_corrected;

  const bool link_crc = cfg_.mode == ProtocolMode::kCxlBaseline && cfg_.terminate_link_crc;
  CoreBytes core = decoded.core;
  if (link_crc && verify_flit_baseline(flit_from_core(core), *crc_) == CrcCheck::kFail) {
    ++log_.dropped_crc;
    out.reason = DropReason::kCrcFail;
    return out;
  }

  if (force_internal_corrupt || rng.bernoulli(cfg_.internal_error_prob)) {
    out.internal_mask = internal_corruption_mask(rng);
    WireFlit scratch{};
    std::copy(core.begin(), core.end(), scratch.begin());
    apply_mask(scratch, out.internal_mask);
    std::copy_n(scratch.begin(), kCoreBytes, core.begin());
    ++log_.internal_corruptions;
  }
  if (link_crc) {
    Flit f = flit_from_core(core);
    f.crc = flit_crc_baseline(f.header, f.payload, *crc_);
    core = core_bytes(f);
  }

  out.forwarded = true;
  out.wire = fec::fec_encode_flit(core);
  ++log_.forwarded;
  return out;
}

}  // namespace rxl
