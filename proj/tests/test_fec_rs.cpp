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
#include "rxl/fec_rs.hpp"

namespace rxl::fec {
namespace {

using rxl::testing::reference_gf_mul;
using rxl::testing::reference_poly_eval;
using rxl::testing::reference_subblock;

constexpr std::array<uint8_t, 8> kMagnitudes = {0x01, 0x02, 0x10, 0x55, 0x80, 0xA7, 0xFE, 0xFF};

std::vector<uint8_t> random_bytes(std::mt19937_64& gen, std::size_t n) {
  std::vector<uint8_t> v(n);
  for (auto& b : v) b = static_cast<uint8_t>(gen());
  return v;
}

CoreBytes random_core(std::mt19937_64& gen) {
  CoreBytes c{};
  for (auto& b : c) b = static_cast<uint8_t>(gen());
  return c;
}

std::vector<uint8_t> codeword(const std::vector<uint8_t>& data) {
  const Parity p = rs_encode_subblock(data);
  std::vector<uint8_t> cw = data;
  cw.insert(cw.end(), p.begin(), p.end());
  return cw;
}

TEST(Gf256, MultiplicationMatchesShiftAndAddOracle) {
  for (unsigned a = 0; a < 256; ++a) {
    for (unsigned b = 0; b < 256; ++b) {
      ASSERT_EQ(gf_mul(Gf256(a), Gf256(b)).value(), reference_gf_mul(a, b)) << a << "*" << b;
    }
  }
  EXPECT_EQ(gf_mul(Gf256(0x02), Gf256(0x80)).value(), 0x1D);
}

TEST(Gf256, FieldAxioms) {
  for (unsigned a = 0; a < 256; ++a) {
    const Gf256 x(a);
    EXPECT_EQ(x * Gf256(1), x);
    EXPECT_EQ(x * Gf256(0), Gf256(0));
    EXPECT_EQ(x + x, Gf256(0));
    EXPECT_EQ(mul_alpha(x), x * Gf256(kPrimitiveElement));
    if (a != 0) EXPECT_EQ(x * x.inverse(), Gf256(1));
  }
  std::mt19937_64 gen(1);
  for (int i = 0; i < 5000; ++i) {
    const Gf256 a(gen()), b(gen()), c(gen());
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_EQ((a * b) * c, a * (b * c));
  }
}

TEST(Gf256, AlphaGeneratesTheMultiplicativeGroup) {
  std::vector<bool> seen(256, false);
  for (int e = 0; e < 255; ++e) {
    const uint8_t v = Gf256::alpha_pow(e).value();
    EXPECT_EQ(v, testing::reference_gf_pow(2, static_cast<unsigned>(e)));
    EXPECT_FALSE(seen[v]);
    seen[v] = true;
  }
  EXPECT_FALSE(seen[0]);
}

TEST(ReedSolomon, RejectsInvalidLengths) {
  std::vector<uint8_t> v(82);
  EXPECT_THROW(rs_encode_subblock(v), std::invalid_argument);
  v.resize(85);
  EXPECT_THROW(rs_encode_subblock(v), std::invalid_argument);
  v.resize(84);
  EXPECT_THROW(rs_decode_subblock(v), std::invalid_argument);
  v.resize(87);
  EXPECT_THROW(rs_decode_subblock(v), std::invalid_argument);
  EXPECT_THROW(interleave(v), std::invalid_argument);
}

TEST(ReedSolomon, ZeroDataGivesZeroParity) {
  for (std::size_t n : {83u, 84u}) {
    const Parity p = rs_encode_subblock(std::vector<uint8_t>(n, 0));
    EXPECT_EQ(p[0], 0);
    EXPECT_EQ(p[1], 0);
  }
}

TEST(ReedSolomon, CodewordsVanishAtGeneratorRoots) {
  // Leading shortened zeros do not change the evaluation, so checking the
  // real span against alpha^0 and alpha^1 is the full-length codeword check.
  std::mt19937_64 gen(2);
  for (int i = 0; i < 200; ++i) {
    const auto cw = codeword(random_bytes(gen, i % 2 ? 83 : 84));
    ASSERT_EQ(reference_poly_eval(cw, 1), 0);
    ASSERT_EQ(reference_poly_eval(cw, 2), 0);
    std::vector<uint8_t> full(255 - cw.size(), 0);
    full.insert(full.end(), cw.begin(), cw.end());
    ASSERT_EQ(reference_poly_eval(full, 2), 0);
  }
}

TEST(ReedSolomon, CleanCodewordDecodesToNoError) {
  std::mt19937_64 gen(3);
  for (std::size_t n : {83u, 84u}) {
    const auto cw = codeword(random_bytes(gen, n));
    const auto d = rs_decode_subblock(cw);
    EXPECT_EQ(d.outcome, DecodeOutcome::no_error());
    EXPECT_EQ(d.bytes, cw);
  }
}

TEST(ReedSolomon, EverySingleSymbolErrorIsCorrectedExactly) {
  std::mt19937_64 gen(4);
  for (std::size_t n : {83u, 84u}) {
    const auto cw = codeword(random_bytes(gen, n));
    for (std::size_t pos = 0; pos < cw.size(); ++pos) {
      for (uint8_t m : kMagnitudes) {
        auto bad = cw;
        bad[pos] ^= m;
        const auto d = rs_decode_subblock(bad);
        ASSERT_EQ(d.outcome, DecodeOutcome::corrected(pos, m)) << "n=" << n << " pos=" << pos;
        ASSERT_EQ(d.bytes, cw);
      }
    }
  }
}

TEST(ReedSolomon, TwoSymbolErrorsAreMostlyDetected) {
  // A double error yields a uniformly distributed locator over the 253
  // non-trivial outcomes; locators outside the real span are detections.
  std::mt19937_64 gen(5);
  const auto cw = codeword(random_bytes(gen, 84));
  const int trials = 40000;
  int detected = 0;
  for (int t = 0; t < trials; ++t) {
    auto bad = cw;
    const std::size_t a = gen() % cw.size();
    std::size_t b = gen() % (cw.size() - 1);
    if (b >= a) ++b;
    bad[a] ^= static_cast<uint8_t>(1 + gen() % 255);
    bad[b] ^= static_cast<uint8_t>(1 + gen() % 255);
    const auto d = rs_decode_subblock(bad);
    ASSERT_NE(d.outcome.kind, DecodeKind::kNoError);
    if (d.outcome.kind == DecodeKind::kDetectedUncorrectable) ++detected;
    if (d.outcome.kind == DecodeKind::kCorrected) ASSERT_LT(d.outcome.position, cw.size());
  }
  EXPECT_NEAR(static_cast<double>(detected) / trials, 169.0 / 253.0, 0.1);
}

TEST(Interleave, MapsByteIToSubBlockIMod3) {
  std::vector<uint8_t> block(kCoreBytes);
  for (std::size_t i = 0; i < block.size(); ++i) block[i] = static_cast<uint8_t>(i);
  const SubBlocks s = interleave(block);
  EXPECT_EQ(s[0].size(), 84u);
  EXPECT_EQ(s[1].size(), 83u);
  EXPECT_EQ(s[2].size(), 83u);
  EXPECT_EQ(s[0][0], 0);
  EXPECT_EQ(s[1][0], 1);
  EXPECT_EQ(s[2][0], 2);
  for (std::size_t i = 0; i < block.size(); ++i) EXPECT_EQ(s[i % 3][i / 3], block[i]);
}

TEST(Interleave, RoundTripIsIdentity) {
  std::mt19937_64 gen(6);
  for (int i = 0; i < 50; ++i) {
    const CoreBytes c = random_core(gen);
    EXPECT_EQ(deinterleave(interleave(c)), c);
  }
}

TEST(Interleave, ThreeByteBurstHitsEachSubBlockOnce) {
  for (std::size_t off = 0; off + 3 <= kCoreBytes; ++off) {
    std::array<int, 3> hits{};
    for (std::size_t i = off; i < off + 3; ++i) ++hits[i % 3];
    EXPECT_EQ(hits, (std::array<int, 3>{1, 1, 1})) << off;
  }
}

TEST(FecFlit, ParityPlacementMatchesPerSubBlockEncoder) {
  std::mt19937_64 gen(7);
  const CoreBytes c = random_core(gen);
  const WireFlit w = fec_encode_flit(c);
  EXPECT_TRUE(std::equal(c.begin(), c.end(), w.begin()));
  for (std::size_t j = 0; j < kInterleave; ++j) {
    const Parity p = rs_encode_subblock(reference_subblock(c, j));
    EXPECT_EQ(w[kFecOffset + 2 * j], p[0]) << j;
    EXPECT_EQ(w[kFecOffset + 2 * j + 1], p[1]) << j;
  }
}

TEST(FecFlit, CleanRoundTrip) {
  std::mt19937_64 gen(8);
  for (int i = 0; i < 100; ++i) {
    const CoreBytes c = random_core(gen);
    const FlitDecode d = fec_decode_flit(fec_encode_flit(c));
    EXPECT_EQ(d.core, c);
    EXPECT_EQ(d.verdict, FlitVerdict::kClean);
    for (const auto& o : d.subblocks) EXPECT_EQ(o.kind, DecodeKind::kNoError);
  }
}

TEST(FecFlit, EveryWireByteErrorIsCorrected) {
  std::mt19937_64 gen(9);
  const CoreBytes c = random_core(gen);
  const WireFlit w = fec_encode_flit(c);
  for (std::size_t pos = 0; pos < kFlitBytes; ++pos) {
    for (uint8_t m : kMagnitudes) {
      WireFlit bad = w;
      bad[pos] ^= m;
      const FlitDecode d = fec_decode_flit(bad);
      ASSERT_EQ(d.verdict, FlitVerdict::kCorrected) << pos;
      ASSERT_EQ(d.core, c) << pos;
    }
  }
}

TEST(FecFlit, EveryThreeByteBurstInCoreIsCorrected) {
  std::mt19937_64 gen(10);
  const CoreBytes c = random_core(gen);
  const WireFlit w = fec_encode_flit(c);
  for (std::size_t off = 0; off + 3 <= kCoreBytes; ++off) {
    for (int rep = 0; rep < 8; ++rep) {
      WireFlit bad = w;
      for (std::size_t i = off; i < off + 3; ++i) bad[i] ^= static_cast<uint8_t>(1 + gen() % 255);
      const FlitDecode d = fec_decode_flit(bad);
      ASSERT_EQ(d.verdict, FlitVerdict::kCorrected) << off;
      ASSERT_EQ(d.core, c) << off;
    }
  }
}

TEST(FecFlit, SixByteBurstsAreUsuallyDetected) {
  std::mt19937_64 gen(11);
  const WireFlit w = fec_encode_flit(random_core(gen));
  const int trials = 20000;
  int detected = 0;
  for (int t = 0; t < trials; ++t) {
    WireFlit bad = w;
    const std::size_t off = gen() % (kCoreBytes - 5);
    for (std::size_t i = off; i < off + 6; ++i) bad[i] ^= static_cast<uint8_t>(1 + gen() % 255);
    detected += fec_decode_flit(bad).verdict == FlitVerdict::kDetectedUncorrectable;
  }
  EXPECT_NEAR(static_cast<double>(detected) / trials, 26.0 / 27.0, 0.1);
}

TEST(FecFlit, UncorrectableSubBlockFlagsTheFlit) {
  std::mt19937_64 gen(12);
  const WireFlit w = fec_encode_flit(random_core(gen));
  int flagged = 0;
  for (int t = 0; t < 2000; ++t) {
    WireFlit bad = w;
    bad[0] ^= static_cast<uint8_t>(1 + gen() % 255);
    bad[3] ^= static_cast<uint8_t>(1 + gen() % 255);  // same sub-block as byte 0
    const FlitDecode d = fec_decode_flit(bad);
    const bool any = std::any_of(d.subblocks.begin(), d.subblocks.end(), [](const DecodeOutcome& o) {
      return o.kind == DecodeKind::kDetectedUncorrectable;
    });
    ASSERT_EQ(any, d.verdict == FlitVerdict::kDetectedUncorrectable);
    EXPECT_EQ(d.subblocks[1].kind, DecodeKind::kNoError);
    flagged += any;
  }
  EXPECT_GT(flagged, 0);
}

}  // namespace
}  // namespace rxl::fec
