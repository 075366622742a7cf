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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "rxl/flit_codec.hpp"

namespace rxl {
namespace {

Payload random_payload(std::mt19937_64& gen) {
  Payload p{};
  for (auto& b : p) b = static_cast<uint8_t>(gen());
  return p;
}

FlitHeader header(uint32_t fsn, ReplayCmd cmd) { return FlitHeader{SeqNum(fsn), cmd, 0}; }

TEST(SeqNum, WrapsModulo1024) {
  EXPECT_EQ(SeqNum(1023).next(), SeqNum(0));
  EXPECT_EQ(SeqNum(0).prev(), SeqNum(1023));
  EXPECT_EQ(SeqNum(1020) + 10, SeqNum(6));
  EXPECT_EQ(SeqNum(6) - 10, SeqNum(1020));
  EXPECT_EQ(SeqNum(1030).value(), 6);
}

TEST(SeqNum, HalfWindowComparisons) {
  for (uint32_t base : {0u, 511u, 1000u}) {
    const SeqNum a(base);
    EXPECT_FALSE(a.newer_than(a));
    EXPECT_TRUE((a + 1).newer_than(a));
    EXPECT_TRUE((a + 511).newer_than(a));
    EXPECT_FALSE((a + 512).newer_than(a));
    EXPECT_FALSE((a + 512).older_than(a)) << "antipodal values are ambiguous";
    EXPECT_TRUE((a + 513).older_than(a));
    EXPECT_TRUE((a - 1).older_than(a));
  }
}

TEST(SeqNum, ComparisonIsTotalWithinHalfWindow) {
  // For every pair closer than half the space exactly one of equal / newer /
  // older holds.
  for (uint32_t x = 0; x < 1024; x += 37) {
    for (uint32_t y = 0; y < 1024; ++y) {
      const SeqNum a(x), b(y);
      if (a.distance_from(b) == SeqNum::kHalfWindow) continue;
      const int relations = (a == b) + a.newer_than(b) + a.older_than(b);
      ASSERT_EQ(relations, 1) << x << " vs " << y;
    }
  }
}

TEST(FlitHeader, ZeroFieldsPackToZero) {
  const auto b = pack_header(header(0, ReplayCmd::kSeq));
  EXPECT_EQ(b[0], 0);
  EXPECT_EQ(b[1], 0);
}

TEST(FlitHeader, SaturatedFieldsSetTwelveBits) {
  const auto b = pack_header(header(1023, ReplayCmd::kNackSingle));
  const uint16_t word = static_cast<uint16_t>(b[0] | (b[1] << 8));
  EXPECT_EQ(word, 0x0FFF);
}

TEST(FlitHeader, RoundTripsEveryField) {
  for (uint32_t fsn = 0; fsn < 1024; ++fsn) {
    for (uint8_t cmd = 0; cmd < 4; ++cmd) {
      const FlitHeader h = header(fsn, static_cast<ReplayCmd>(cmd));
      ASSERT_EQ(unpack_header(pack_header(h)), h);
    }
  }
  const FlitHeader h = header(100, ReplayCmd::kAck);
  EXPECT_EQ(unpack_header(pack_header(h)).fsn, SeqNum(100));
  EXPECT_EQ(unpack_header(pack_header(h)).replay_cmd, ReplayCmd::kAck);
}

TEST(FlitCodec, BaselineCrcCoversHeaderAndPayload) {
  std::mt19937_64 gen(1);
  const Payload p = random_payload(gen);
  const FlitHeader h = header(77, ReplayCmd::kSeq);
  std::vector<uint8_t> message;
  const auto hb = pack_header(h);
  message.insert(message.end(), hb.begin(), hb.end());
  message.insert(message.end(), p.begin(), p.end());
  const Flit f = encode_flit_baseline(h, p);
  EXPECT_EQ(f.crc, testing::reference_crc64(message, Crc64::kEcma182));
  EXPECT_EQ(f.payload, p);
}

TEST(FlitCodec, ZeroFlitCrcEqualsCrcOfZeroBytes) {
  const Flit f = encode_flit_baseline(header(0, ReplayCmd::kSeq), Payload{});
  EXPECT_EQ(f.crc, testing::reference_crc64(std::vector<uint8_t>(242, 0), Crc64::kEcma182));
}

TEST(FlitCodec, IsnFoldsSequenceIntoFirstTenPayloadBits) {
  std::mt19937_64 gen(2);
  const Payload p = random_payload(gen);
  const FlitHeader h = header(5, ReplayCmd::kAck);
  for (uint32_t seq : {0u, 1u, 255u, 256u, 700u, 1023u}) {
    Payload folded = p;
    folded[0] ^= static_cast<uint8_t>(seq & 0xFF);
    folded[1] ^= static_cast<uint8_t>((seq >> 8) & 0x3);
    const Flit isn = encode_flit_isn(h, p, SeqNum(seq));
    EXPECT_EQ(isn.crc, encode_flit_baseline(h, folded).crc) << seq;
    EXPECT_EQ(isn.payload, p) << "the fold must not reach the transmitted payload";
  }
}

TEST(FlitCodec, IsnAtSeqZeroEqualsBaseline) {
  std::mt19937_64 gen(3);
  for (int i = 0; i < 200; ++i) {
    const Payload p = random_payload(gen);
    const FlitHeader h = header(static_cast<uint32_t>(gen() & 1023), static_cast<ReplayCmd>(gen() & 3));
    EXPECT_EQ(encode_flit_isn(h, p, SeqNum(0)), encode_flit_baseline(h, p));
  }
}

TEST(FlitCodec, RoundTripVerifiesInBothModes) {
  std::mt19937_64 gen(4);
  for (int i = 0; i < 200; ++i) {
    const Payload p = random_payload(gen);
    const SeqNum s(static_cast<uint32_t>(gen()));
    const FlitHeader h = header(static_cast<uint32_t>(gen()), ReplayCmd::kSeq);
    EXPECT_EQ(verify_flit_baseline(encode_flit_baseline(h, p)), CrcCheck::kPass);
    EXPECT_EQ(verify_flit_isn(encode_flit_isn(h, p, s), s), CrcCheck::kPass);
  }
}

TEST(FlitCodec, FsnDifferingByOneChangesCrc) {
  std::mt19937_64 gen(5);
  const Payload p = random_payload(gen);
  for (uint32_t fsn = 0; fsn < 1023; ++fsn) {
    ASSERT_NE(encode_flit_baseline(header(fsn, ReplayCmd::kSeq), p).crc,
              encode_flit_baseline(header(fsn + 1, ReplayCmd::kSeq), p).crc);
  }
}

TEST(FlitCodec, IsnRejectsEveryMismatchedExpectedSeqOnRandomPayloads) {
  std::mt19937_64 gen(6);
  for (int i = 0; i < 300; ++i) {
    const Payload p = random_payload(gen);
    const SeqNum seq(static_cast<uint32_t>(gen()));
    const SeqNum eseq = seq + (1 + static_cast<uint32_t>(gen() % 1023));
    const Flit f = encode_flit_isn(header(0, ReplayCmd::kSeq), p, seq);
    ASSERT_EQ(verify_flit_isn(f, eseq), CrcCheck::kFail);
  }
  // The dropped-flit case: a flit encoded for seq+1 arrives while seq is expected.
  const Flit next = encode_flit_isn(header(0, ReplayCmd::kSeq), random_payload(gen), SeqNum(6));
  EXPECT_EQ(verify_flit_isn(next, SeqNum(5)), CrcCheck::kFail);
}

TEST(FlitCodec, SinglePayloadBitFlipFailsBothVerifiers) {
  std::mt19937_64 gen(8);
  const Payload p = random_payload(gen);
  const Flit base = encode_flit_baseline(header(9, ReplayCmd::kSeq), p);
  const Flit isn = encode_flit_isn(header(0, ReplayCmd::kSeq), p, SeqNum(9));
  for (std::size_t bit = 0; bit < kPayloadBytes * 8; ++bit) {
    Flit a = base, b = isn;
    a.payload[bit / 8] ^= static_cast<uint8_t>(0x80u >> (bit % 8));
    b.payload[bit / 8] ^= static_cast<uint8_t>(0x80u >> (bit % 8));
    ASSERT_EQ(verify_flit_baseline(a), CrcCheck::kFail) << bit;
    ASSERT_EQ(verify_flit_isn(b, SeqNum(9)), CrcCheck::kFail) << bit;
  }
}

TEST(FlitCodec, Bursts64AnywhereInProtectedRegionFail) {
  std::mt19937_64 gen(9);
  const Flit f = encode_flit_baseline(header(3, ReplayCmd::kAck), random_payload(gen));
  const CoreBytes clean = core_bytes(f);
  constexpr std::size_t kBits = kCoreBytes * 8;
  for (std::size_t start = 0; start + 64 <= kBits; ++start) {
    CoreBytes c = clean;
    for (std::size_t b = start; b < start + 64; ++b) {
      if (b == start || b == start + 63 || (gen() & 1)) c[b / 8] ^= static_cast<uint8_t>(0x80u >> (b % 8));
    }
    ASSERT_EQ(verify_flit_baseline(flit_from_core(c)), CrcCheck::kFail) << start;
  }
}

TEST(FlitCodec, WireLayoutPlacesFieldsAtDocumentedOffsets) {
  std::mt19937_64 gen(10);
  Flit f = encode_flit_baseline(header(513, ReplayCmd::kAck), random_payload(gen));
  f.fec = {1, 2, 3, 4, 5, 6};
  const WireFlit w = to_wire(f);
  const auto hb = pack_header(f.header);
  EXPECT_TRUE(std::equal(hb.begin(), hb.end(), w.begin()));
  EXPECT_TRUE(std::equal(f.payload.begin(), f.payload.end(), w.begin() + kPayloadOffset));
  const auto cb = crc_to_bytes(f.crc);
  EXPECT_TRUE(std::equal(cb.begin(), cb.end(), w.begin() + kCrcOffset));
  EXPECT_EQ(w[kFecOffset], 1);
  EXPECT_EQ(w[kFlitBytes - 1], 6);
  EXPECT_EQ(from_wire(w), f);
}

}  // namespace
}  // namespace rxl
