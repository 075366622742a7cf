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

#include "rxl/crc64.hpp"
#include "rxl/seq_num.hpp"

namespace rxl {

inline constexpr std::size_t kHeaderBytes = 2;
inline constexpr std::size_t kPayloadBytes = 240;
inline constexpr std::size_t kCrcBytes = 8;
inline constexpr std::size_t kFecBytes = 6;
inline constexpr std::size_t kCoreBytes = kHeaderBytes + kPayloadBytes + kCrcBytes;  // 250
inline constexpr std::size_t kFlitBytes = kCoreBytes + kFecBytes;                     // 256
inline constexpr std::size_t kFlitBits = kFlitBytes * 8;

inline constexpr std::size_t kPayloadOffset = kHeaderBytes;
inline constexpr std::size_t kCrcOffset = kHeaderBytes + kPayloadBytes;
inline constexpr std::size_t kFecOffset = kCoreBytes;

// Meaning of the FSN field.
enum class ReplayCmd : uint8_t {
  kSeq = 0,          // FSN = this flit's sequence number
  kAck = 1,          // FSN = piggybacked AckNum
  kNackGoBackN = 2,  // FSN = last valid seq, go-back-N retry
  kNackSingle = 3,   // FSN = last valid seq, single-flit retry
};

struct FlitHeader {
  SeqNum fsn;
  ReplayCmd replay_cmd = ReplayCmd::kSeq;
  uint8_t reserved = 0;  // 4 bits, zero on construction

  friend bool operator==(const FlitHeader&, const FlitHeader&) = default;
};

using HeaderBytes = std::array<uint8_t, kHeaderBytes>;
using Payload = std::array<uint8_t, kPayloadBytes>;
using CoreBytes = std::array<uint8_t, kCoreBytes>;
using WireFlit = std::array<uint8_t, kFlitBytes>;

struct Flit {
  FlitHeader header;
  Payload payload{};
  uint64_t crc = 0;
  std::array<uint8_t, kFecBytes> fec{};

  friend bool operator==(const Flit&, const Flit&) = default;
};

enum class CrcCheck : uint8_t { kPass, kFail };

// Header word, little-endian: bits 0-9 fsn, 10-11 replay_cmd, 12-15 reserved.
HeaderBytes pack_header(FlitHeader header);
FlitHeader unpack_header(HeaderBytes bytes);

// Header || payload || CRC, the region FEC protects.
CoreBytes core_bytes(const Flit& flit);
Flit flit_from_core(std::span<const uint8_t, kCoreBytes> core);

WireFlit to_wire(const Flit& flit);
Flit from_wire(std::span<const uint8_t, kFlitBytes> wire);

uint64_t flit_crc_baseline(FlitHeader header, const Payload& payload,
                           const Crc64& crc = Crc64::ecma182());

// CRC over header || payload with seq XOR-folded into payload bits 0-9
// (byte 0 = low 8 bits, byte 1 bits 0-1 = high 2 bits).
uint64_t flit_crc_isn(FlitHeader header, const Payload& payload, SeqNum seq,
                      const Crc64& crc = Crc64::ecma182());

Flit encode_flit_baseline(FlitHeader header, const Payload& payload,
                          const Crc64& crc = Crc64::ecma182());

// The transmitted payload is the original; the fold only enters the CRC.
Flit encode_flit_isn(FlitHeader header, const Payload& payload, SeqNum seq,
                     const Crc64& crc = Crc64::ecma182());

CrcCheck verify_flit_baseline(const Flit& flit, const Crc64& crc = Crc64::ecma182());
CrcCheck verify_flit_isn(const Flit& flit, SeqNum expected_seq,
                         const Crc64& crc = Crc64::ecma182());

}  // namespace rxl
