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

#include "rxl/selftest.hpp"

#include <fmt/format.h>

#include "rxl/fec_rs.hpp"
#include "rxl/flit_codec.hpp"
#include "rxl/rng.hpp"

namespace rxl {
namespace {

constexpr std::size_t kProtectedBits = (kHeaderBytes + kPayloadBytes + kCrcBytes) * 8;

Flit random_flit(SplitMix64& rng, bool isn, SeqNum seq) {
  Payload p{};
  for (auto& b : p) b = static_cast<uint8_t>(rng());
  FlitHeader h{SeqNum(static_cast<uint32_t>(rng.below(1024))),
               static_cast<ReplayCmd>(rng.below(4)), 0};
  return isn ? encode_flit_isn(h, p, seq) : encode_flit_baseline(h, p);
}

void flip(CoreBytes& core, std::size_t bit) { core[bit / 8] ^= static_cast<uint8_t>(0x80u >> (bit % 8)); }

CheckResult single_bit(SplitMix64& rng) {
  const Flit f = random_flit(rng, false, SeqNum());
  const CoreBytes clean = core_bytes(f);
  std::size_t escapes = 0;
  for (std::size_t b = 0; b < kProtectedBits; ++b) {
    CoreBytes c = clean;
    flip(c, b);
    if (verify_flit_baseline(flit_from_core(c)) == CrcCheck::kPass) ++escapes;
  }
  return {"crc_single_bit", escapes == 0, fmt::format("{} positions, {} escapes", kProtectedBits, escapes)};
}

CheckResult bursts(SplitMix64& rng) {
  const Flit f = random_flit(rng, false, SeqNum());
  const CoreBytes clean = core_bytes(f);
  std::size_t cases = 0, escapes = 0;
  for (std::size_t len = 1; len <= 64; ++len) {
    for (std::size_t start = 0; start + len <= kProtectedBits; ++start) {
      CoreBytes c = clean;
      // Burst: first and last bit flipped, interior random.
      flip(c, start);
      if (len > 1) flip(c, start + len - 1);
      for (std::size_t k = 1; k + 1 < len; ++k) {
        if (rng() & 1) flip(c, start + k);
      }
      ++cases;
      if (verify_flit_baseline(flit_from_core(c)) == CrcCheck::kPass) ++escapes;
    }
  }
  return {"crc_burst_le_64", escapes == 0, fmt::format("{} bursts, {} escapes", cases, escapes)};
}

CheckResult isn_pairs(SplitMix64& rng) {
  Payload p{};
  for (auto& b : p) b = static_cast<uint8_t>(rng());
  const FlitHeader h{};
  std::size_t escapes = 0;
  for (uint32_t seq = 0; seq < SeqNum::kModulus; ++seq) {
    const Flit f = encode_flit_isn(h, p, SeqNum(seq));
    for (uint32_t e = 0; e < SeqNum::kModulus; ++e) {
      if (e != seq && verify_flit_isn(f, SeqNum(e)) == CrcCheck::kPass) ++escapes;
    }
  }
  return {"isn_seq_mismatch", escapes == 0, fmt::format("1024x1023 pairs, {} escapes", escapes)};
}

CheckResult isn_zero(SplitMix64& rng) {
  std::size_t mismatches = 0;
  for (int i = 0; i < 1000; ++i) {
    Payload p{};
    for (auto& b : p) b = static_cast<uint8_t>(rng());
    const FlitHeader h{SeqNum(static_cast<uint32_t>(rng.below(1024))),
                       static_cast<ReplayCmd>(rng.below(4)), 0};
    if (to_wire(encode_flit_isn(h, p, SeqNum(0))) != to_wire(encode_flit_baseline(h, p))) ++mismatches;
  }
  return {"isn_seq0_equals_baseline", mismatches == 0, fmt::format("1000 flits, {} mismatches", mismatches)};
}

CheckResult fec_single_symbol(SplitMix64& rng) {
  CoreBytes core{};
  for (auto& b : core) b = static_cast<uint8_t>(rng());
  const WireFlit clean = fec::fec_encode_flit(core);
  std::size_t cases = 0, failures = 0;
  for (std::size_t off = 0; off < kFlitBytes; ++off) {
    for (int m = 0; m < 8; ++m) {
      const uint8_t mag = static_cast<uint8_t>(1 + rng.below(255));
      WireFlit w = clean;
      w[off] ^= mag;
      const fec::FlitDecode d = fec::fec_decode_flit(w);
      ++cases;
      if (d.verdict != fec::FlitVerdict::kCorrected || d.core != core) ++failures;
    }
  }
  return {"fec_single_symbol", failures == 0, fmt::format("{} cases, {} failures", cases, failures)};
}

CheckResult fec_three_byte_bursts(SplitMix64& rng) {
  CoreBytes core{};
  for (auto& b : core) b = static_cast<uint8_t>(rng());
  const WireFlit clean = fec::fec_encode_flit(core);
  std::size_t cases = 0, failures = 0;
  for (std::size_t off = 0; off + 3 <= kCoreBytes; ++off) {
    for (int m = 0; m < 8; ++m) {
      WireFlit w = clean;
      for (std::size_t k = 0; k < 3; ++k) w[off + k] ^= static_cast<uint8_t>(1 + rng.below(255));
      const fec::FlitDecode d = fec::fec_decode_flit(w);
      ++cases;
      if (d.core != core || d.verdict == fec::FlitVerdict::kDetectedUncorrectable) ++failures;
    }
  }
  return {"fec_3byte_burst", failures == 0, fmt::format("{} cases, {} failures", cases, failures)};
}

}  // namespace

std::vector<CheckResult> run_codec_selftest(uint64_t seed) {
  SplitMix64 rng(seed);
  return {single_bit(rng), bursts(rng), isn_pairs(rng), isn_zero(rng), fec_single_symbol(rng),
          fec_three_byte_bursts(rng)};
}

}  // namespace rxl
