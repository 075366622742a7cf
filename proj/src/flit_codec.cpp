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

#include "rxl/flit_codec.hpp"

#include <algorithm>

namespace rxl {

HeaderBytes pack_header(FlitHeader header) {
  const uint16_t word = static_cast<uint16_t>(
      header.fsn.value() | (static_cast<uint16_t>(header.replay_cmd) & 0x3u) << 10 |
      (static_cast<uint16_t>(header.reserved) & 0xFu) << 12);
  return {static_cast<uint8_t>(word & 0xFF), static_cast<uint8_t>(word >> 8)};
}

FlitHeader unpack_header(HeaderBytes bytes) {
  const uint16_t word = static_cast<uint16_t>(bytes[0] | bytes[1] << 8);
  FlitHeader h;
  h.fsn = SeqNum(word & SeqNum::kMask);
  h.replay_cmd = static_cast<ReplayCmd>((word >> 10) & 0x3u);
  h.reserved = static_cast<uint8_t>((word >> 12) & 0xFu);
  return h;
}

CoreBytes core_bytes(const Flit& flit) {
  CoreBytes core{};
  const HeaderBytes h = pack_header(flit.header);
  std::copy(h.begin(), h.end(), core.begin());
  std::copy(flit.payload.begin(), flit.payload.end(), core.begin() + kPayloadOffset);
  const auto c = crc_to_bytes(flit.crc);
  std::copy(c.begin(), c.end(), core.begin() + kCrcOffset);
  return core;
}

Flit flit_from_core(std::span<const uint8_t, kCoreBytes> core) {
  Flit f;
  f.header = unpack_header({core[0], core[1]});
  std::copy_n(core.begin() + kPayloadOffset, kPayloadBytes, f.payload.begin());
  f.crc = crc_from_bytes(core.subspan<kCrcOffset, kCrcBytes>());
  return f;
}

WireFlit to_wire(const Flit& flit) {
  WireFlit wire{};
  const CoreBytes core = core_bytes(flit);
  std::copy(core.begin(), core.end(), wire.begin());
  std::copy(flit.fec.begin(), flit.fec.end(), wire.begin() + kFecOffset);
  return wire;
}

Flit from_wire(std::span<const uint8_t, kFlitBytes> wire) {
  Flit f = flit_from_core(wire.first<kCoreBytes>());
  std::copy_n(wire.begin() + kFecOffset, kFecBytes, f.fec.begin());
  return f;
}

uint64_t flit_crc_baseline(FlitHeader header, const Payload& payload, const Crc64& crc) {
  const HeaderBytes h = pack_header(header);
  return crc.update(crc.compute(h), payload);
}

uint64_t flit_crc_isn(FlitHeader header, const Payload& payload, SeqNum seq,
                      const Crc64& crc) {
  const HeaderBytes h = pack_header(header);
  const uint8_t folded[2] = {
      static_cast<uint8_t>(payload[0] ^ (seq.value() & 0xFF)),
      static_cast<uint8_t>(payload[1] ^ ((seq.value() >> 8) & 0x3)),
  };
  uint64_t c = crc.compute(h);
  c = crc.update(c, folded);
  return crc.update(c, std::span<const uint8_t>(payload).subspan(2));
}

Flit encode_flit_baseline(FlitHeader header, const Payload& payload, const Crc64& crc) {
  Flit f;
  f.header = header;
  f.payload = payload;
  f.crc = flit_crc_baseline(header, payload, crc);
  return f;
}

Flit encode_flit_isn(FlitHeader header, const Payload& payload, SeqNum seq,
                     const Crc64& crc) {
  Flit f;
  f.header = header;
  f.payload = payload;
  f.crc = flit_crc_isn(header, payload, seq, crc);
  return f;
}

CrcCheck verify_flit_baseline(const Flit& flit, const Crc64& crc) {
  return flit_crc_baseline(flit.header, flit.payload, crc) == flit.crc ? CrcCheck::kPass
                                                                       : CrcCheck::kFail;
}

CrcCheck verify_flit_isn(const Flit& flit, SeqNum expected_seq, const Crc64& crc) {
  return flit_crc_isn(flit.header, flit.payload, expected_seq, crc) == flit.crc
             ? CrcCheck::kPass
             : CrcCheck::kFail;
}

}  // namespace rxl
