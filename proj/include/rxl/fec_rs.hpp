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

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rxl/flit_codec.hpp"
#include "rxl/gf256.hpp"

namespace rxl::fec {

// Shortened RS(255,253) over GF(2^8), generator roots alpha^0 and alpha^1,
// applied to three interleaved sub-blocks of the 250-byte flit core.
//
// Within a sub-block of n = data + 2 symbols, data byte k sits at degree
// n-1-k; parity p1 at degree 1 and p0 at degree 0. Degrees n..254 are the
// implicit zero (shortened) span.

inline constexpr std::size_t kInterleave = 3;
inline constexpr std::size_t kParityPerSubBlock = 2;
inline constexpr std::size_t kCodewordSymbols = 255;
inline constexpr std::array<std::size_t, kInterleave> kSubBlockDataBytes = {84, 83, 83};

enum class DecodeKind : uint8_t { kNoError, kCorrected, kDetectedUncorrectable };

struct DecodeOutcome {
  DecodeKind kind = DecodeKind::kNoError;
  std::size_t position = 0;  // index in the real codeword span, kCorrected only
  uint8_t magnitude = 0;     // kCorrected only

  static DecodeOutcome no_error() { return {}; }
  static DecodeOutcome corrected(std::size_t pos, uint8_t mag) {
    return {DecodeKind::kCorrected, pos, mag};
  }
  static DecodeOutcome uncorrectable() { return {DecodeKind::kDetectedUncorrectable, 0, 0}; }

  friend bool operator==(const DecodeOutcome&, const DecodeOutcome&) = default;
};

using Parity = std::array<uint8_t, kParityPerSubBlock>;

// data must be 83 or 84 bytes; throws std::invalid_argument otherwise.
Parity rs_encode_subblock(std::span<const uint8_t> data);

struct SubBlockDecode {
  std::vector<uint8_t> bytes;  // data || parity after correction
  DecodeOutcome outcome;
};

// codeword must be 85 or 86 bytes (data || p1 || p0).
SubBlockDecode rs_decode_subblock(std::span<const uint8_t> codeword);

using SubBlocks = std::array<std::vector<uint8_t>, kInterleave>;

// Byte i goes to sub-block i % 3 at position i / 3.
SubBlocks interleave(std::span<const uint8_t> block);
CoreBytes deinterleave(const SubBlocks& blocks);

enum class FlitVerdict : uint8_t { kClean, kCorrected, kDetectedUncorrectable };

struct FlitDecode {
  CoreBytes core{};
  std::array<DecodeOutcome, kInterleave> subblocks{};
  FlitVerdict verdict = FlitVerdict::kClean;
};

// Parity of sub-block j at wire bytes 250+2j (p1) and 251+2j (p0).
WireFlit fec_encode_flit(std::span<const uint8_t, kCoreBytes> core);
FlitDecode fec_decode_flit(std::span<const uint8_t, kFlitBytes> wire);

}  // namespace rxl::fec
