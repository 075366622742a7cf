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

#include "rxl/crc64.hpp"

namespace rxl {

Crc64::Crc64(uint64_t polynomial) : polynomial_(polynomial) {
  auto& t0 = tables_[0];
  for (uint32_t n = 0; n < 256; ++n) {
    uint64_t c = static_cast<uint64_t>(n) << 56;
    for (int k = 0; k < 8; ++k) {
      c = (c & 0x8000000000000000ULL) ? (c << 1) ^ polynomial_ : (c << 1);
    }
    t0[n] = c;
  }
  // tables_[k][b]: byte b followed by k zero bytes.
  for (std::size_t k = 1; k < tables_.size(); ++k) {
    for (uint32_t n = 0; n < 256; ++n) {
      const uint64_t prev = tables_[k - 1][n];
      tables_[k][n] = t0[prev >> 56] ^ (prev << 8);
    }
  }
}

uint64_t Crc64::update(uint64_t crc, std::span<const uint8_t> data) const {
  std::size_t i = 0;
  const std::size_t n = data.size();
  for (; i + 8 <= n; i += 8) {
    uint64_t word = 0;
    for (std::size_t k = 0; k < 8; ++k) word = (word << 8) | data[i + k];
    crc ^= word;
    crc = tables_[7][crc >> 56] ^ tables_[6][(crc >> 48) & 0xFF] ^
          tables_[5][(crc >> 40) & 0xFF] ^ tables_[4][(crc >> 32) & 0xFF] ^
          tables_[3][(crc >> 24) & 0xFF] ^ tables_[2][(crc >> 16) & 0xFF] ^
          tables_[1][(crc >> 8) & 0xFF] ^ tables_[0][crc & 0xFF];
  }
  for (; i < n; ++i) crc = tables_[0][static_cast<uint8_t>(crc >> 56) ^ data[i]] ^ (crc << 8);
  return crc;
}

const Crc64& Crc64::ecma182() {
  static const Crc64 instance(kEcma182);
  return instance;
}

}  // namespace rxl
