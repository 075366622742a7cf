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

#include "rxl/fec_rs.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>
#include <utility>

namespace rxl::fec {
namespace {

constexpr Gf256 kAlpha(kPrimitiveElement);

bool valid_data_length(std::size_t n) { return n == 83 || n == 84; }

// Syndromes of a received word given as a sequence read from the highest
// degree down. S0 = r(1), S1 = r(alpha) by Horner.
template <typename At>
std::pair<Gf256, Gf256> syndromes(std::size_t n, At at) {
  Gf256 s0, s1;
  for (std::size_t k = 0; k < n; ++k) {
    const Gf256 r(at(k));
    s0 += r;
    s1 = mul_alpha(s1) + r;
  }
  return {s0, s1};
}

// Single-symbol hypothesis. Returns the error's index in [0, n) or the
// outcome when no in-span hypothesis exists.
DecodeOutcome locate(std::size_t n, Gf256 s0, Gf256 s1) {
  if (s0.is_zero() && s1.is_zero()) return DecodeOutcome::no_error();
  if (s0.is_zero() || s1.is_zero()) return DecodeOutcome::uncorrectable();
  const int degree = ((s1.log() - s0.log()) % 255 + 255) % 255;
  if (static_cast<std::size_t>(degree) >= n) return DecodeOutcome::uncorrectable();
  return DecodeOutcome::corrected(n - 1 - static_cast<std::size_t>(degree), s0.value());
}

template <typename At>
Parity encode_parity(std::size_t data_len, At at) {
  // With data-only syndromes (A, B), the parity must satisfy
  // A + p1 + p0 = 0 and B + p1*alpha + p0 = 0.
  Gf256 a, b;
  for (std::size_t k = 0; k < data_len; ++k) {
    const Gf256 d(at(k));
    a += d;
    b = mul_alpha(b) + d;
  }
  b = mul_alpha(mul_alpha(b));  // shift past the two parity degrees
  const Gf256 p1 = (a + b) / (Gf256(1) + kAlpha);
  const Gf256 p0 = a + p1;
  return {p1.value(), p0.value()};
}

// Data-only syndromes (A = d(1), B = d(alpha)) of all three sub-blocks of a
// core, evaluated together: byte i feeds lane i % 3 of a packed word and the
// Horner step multiplies every lane by alpha at once.
std::array<std::pair<Gf256, Gf256>, kInterleave> core_syndromes(const uint8_t* core) {
  constexpr uint32_t kLow7 = 0x007F7F7Fu;
  constexpr uint32_t kLaneLsb = 0x00010101u;
  auto mul_alpha_lanes = [](uint32_t x) {
    return ((x & kLow7) << 1) ^ (((x >> 7) & kLaneLsb) * (kFieldPolynomial & 0xFFu));
  };
  uint32_t a = 0;
  uint32_t b = 0;
  constexpr std::size_t kFullGroups = kSubBlockDataBytes[2];  // every lane has this many bytes
  for (std::size_t g = 0; g < kFullGroups; ++g) {
    const uint8_t* q = core + kInterleave * g;
    const uint32_t w = q[0] | (uint32_t{q[1]} << 8) | (uint32_t{q[2]} << 16);
    a ^= w;
    b = mul_alpha_lanes(b) ^ w;
  }
  std::array<std::pair<Gf256, Gf256>, kInterleave> out;
  for (std::size_t j = 0; j < kInterleave; ++j) {
    out[j] = {Gf256(static_cast<uint8_t>(a >> (8 * j))), Gf256(static_cast<uint8_t>(b >> (8 * j)))};
  }
  // Sub-block 0 carries the one remaining byte.
  static_assert(kSubBlockDataBytes[0] == kFullGroups + 1 && kSubBlockDataBytes[1] == kFullGroups);
  const Gf256 last(core[kInterleave * kFullGroups]);
  out[0].first += last;
  out[0].second = mul_alpha(out[0].second) + last;
  return out;
}

Parity parity_from_syndromes(Gf256 a, Gf256 b) {
  b = mul_alpha(mul_alpha(b));
  const Gf256 p1 = (a + b) / (Gf256(1) + kAlpha);
  const Gf256 p0 = a + p1;
  return {p1.value(), p0.value()};
}

}  // namespace

Parity rs_encode_subblock(std::span<const uint8_t> data) {
  if (!valid_data_length(data.size())) {
    throw std::invalid_argument("rs_encode_subblock: data length " +
                                std::to_string(data.size()) + " not in {83, 84}");
  }
  return encode_parity(data.size(), [&](std::size_t k) { return data[k]; });
}

SubBlockDecode rs_decode_subblock(std::span<const uint8_t> codeword) {
  const std::size_t n = codeword.size();
  if (n != 85 && n != 86) {
    throw std::invalid_argument("rs_decode_subblock: codeword length " + std::to_string(n) +
                                " not in {85, 86}");
  }
  SubBlockDecode out{std::vector<uint8_t>(codeword.begin(), codeword.end()), {}};
  const auto [s0, s1] = syndromes(n, [&](std::size_t k) { return codeword[k]; });
  out.outcome = locate(n, s0, s1);
  if (out.outcome.kind == DecodeKind::kCorrected) {
    out.bytes[out.outcome.position] ^= out.outcome.magnitude;
  }
  return out;
}

SubBlocks interleave(std::span<const uint8_t> block) {
  if (block.size() != kCoreBytes) {
    throw std::invalid_argument("interleave: expected 250 bytes, got " +
                                std::to_string(block.size()));
  }
  SubBlocks out;
  for (std::size_t j = 0; j < kInterleave; ++j) out[j].reserve(kSubBlockDataBytes[j]);
  for (std::size_t i = 0; i < block.size(); ++i) out[i % kInterleave].push_back(block[i]);
  return out;
}

CoreBytes deinterleave(const SubBlocks& blocks) {
  for (std::size_t j = 0; j < kInterleave; ++j) {
    if (blocks[j].size() != kSubBlockDataBytes[j]) {
      throw std::invalid_argument("deinterleave: sub-block " + std::to_string(j) +
                                  " has wrong length " + std::to_string(blocks[j].size()));
    }
  }
  CoreBytes core{};
  for (std::size_t i = 0; i < kCoreBytes; ++i) core[i] = blocks[i % kInterleave][i / kInterleave];
  return core;
}

WireFlit fec_encode_flit(std::span<const uint8_t, kCoreBytes> core) {
  WireFlit wire{};
  std::copy(core.begin(), core.end(), wire.begin());
  const auto syn = core_syndromes(core.data());
  for (std::size_t j = 0; j < kInterleave; ++j) {
    const Parity p = parity_from_syndromes(syn[j].first, syn[j].second);
    wire[kFecOffset + 2 * j] = p[0];
    wire[kFecOffset + 2 * j + 1] = p[1];
  }
  return wire;
}

FlitDecode fec_decode_flit(std::span<const uint8_t, kFlitBytes> wire) {
  FlitDecode out;
  std::copy_n(wire.begin(), kCoreBytes, out.core.begin());
  bool corrected = false;
  bool uncorrectable = false;
  const auto syn = core_syndromes(wire.data());
  for (std::size_t j = 0; j < kInterleave; ++j) {
    const std::size_t data_len = kSubBlockDataBytes[j];
    const std::size_t n = data_len + kParityPerSubBlock;
    const Gf256 p1(wire[kFecOffset + 2 * j]);
    const Gf256 p0(wire[kFecOffset + 2 * j + 1]);
    const Gf256 s0 = syn[j].first + p1 + p0;
    const Gf256 s1 = mul_alpha(mul_alpha(syn[j].second) + p1) + p0;
    const DecodeOutcome o = locate(n, s0, s1);
    out.subblocks[j] = o;
    if (o.kind == DecodeKind::kCorrected) {
      corrected = true;
      // Parity corrections leave the core untouched.
      if (o.position < data_len) out.core[o.position * kInterleave + j] ^= o.magnitude;
    } else if (o.kind == DecodeKind::kDetectedUncorrectable) {
      uncorrectable = true;
    }
  }
  out.verdict = uncorrectable ? FlitVerdict::kDetectedUncorrectable
                : corrected   ? FlitVerdict::kCorrected
                              : FlitVerdict::kClean;
  return out;
}

}  // namespace rxl::fec
