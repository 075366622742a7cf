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
#include <cstdint>
#include <span>

namespace rxl {

// Non-reflected, MSB-first CRC-64 with init 0 and no final XOR. Bits are
// consumed most significant first, so the checksum appended big-endian
// forms a codeword divisible by the generator.
class Crc64 {
 public:
  static constexpr uint64_t kEcma182 = 0x42F0E1EBA9EA3693ULL;

  explicit Crc64(uint64_t polynomial = kEcma182);

  uint64_t polynomial() const { return polynomial_; }

  uint64_t compute(std::span<const uint8_t> data) const { return update(0, data); }
  uint64_t update(uint64_t crc, std::span<const uint8_t> data) const;

  // Shared instance for the default polynomial.
  static const Crc64& ecma182();

 private:
  uint64_t polynomial_;
  std::array<std::array<uint64_t, 256>, 8> tables_{};  // slicing-by-8
};

inline std::array<uint8_t, 8> crc_to_bytes(uint64_t crc) {
  std::array<uint8_t, 8> out{};
  for (int i = 0; i < 8; ++i) out[i] = static_cast<uint8_t>(crc >> (56 - 8 * i));
  return out;
}

inline uint64_t crc_from_bytes(std::span<const uint8_t, 8> bytes) {
  uint64_t crc = 0;
  for (uint8_t b : bytes) crc = (crc << 8) | b;
  return crc;
}

}  // namespace rxl
