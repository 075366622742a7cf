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

#include <compare>
#include <cstdint>

namespace rxl {

// 10-bit modular flit sequence number.
class SeqNum {
 public:
  static constexpr uint16_t kModulus = 1024;
  static constexpr uint16_t kMask = kModulus - 1;
  static constexpr uint16_t kHalfWindow = kModulus / 2;

  constexpr SeqNum() = default;
  constexpr explicit SeqNum(uint32_t v) : value_(static_cast<uint16_t>(v & kMask)) {}

  constexpr uint16_t value() const { return value_; }

  constexpr SeqNum next() const { return SeqNum(value_ + 1u); }
  constexpr SeqNum prev() const { return SeqNum(value_ + kModulus - 1u); }
  constexpr SeqNum operator+(uint32_t n) const { return SeqNum(value_ + n); }
  constexpr SeqNum operator-(uint32_t n) const {
    return SeqNum(value_ + kModulus - (n & kMask));
  }

  // Forward distance from `from` to this, in [0, 1024).
  constexpr uint16_t distance_from(SeqNum from) const {
    return static_cast<uint16_t>((value_ + kModulus - from.value_) & kMask);
  }

  // Half-window ordering: true if this lies strictly ahead of `other` by
  // fewer than 512 steps.
  constexpr bool newer_than(SeqNum other) const {
    uint16_t d = distance_from(other);
    return d != 0 && d < kHalfWindow;
  }
  constexpr bool older_than(SeqNum other) const { return other.newer_than(*this); }

  friend constexpr bool operator==(SeqNum, SeqNum) = default;

 private:
  uint16_t value_ = 0;
};

}  // namespace rxl
