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

namespace rxl::fec {

inline constexpr uint16_t kFieldPolynomial = 0x11D;  // x^8 + x^4 + x^3 + x^2 + 1
inline constexpr uint8_t kPrimitiveElement = 0x02;

namespace detail {

struct GfTables {
  std::array<uint8_t, 512> exp{};  // doubled so exp[a + b] needs no reduction
  std::array<uint8_t, 256> log{};  // log[0] unused
};

constexpr GfTables make_tables() {
  GfTables t;
  uint16_t x = 1;
  for (int i = 0; i < 255; ++i) {
    t.exp[i] = static_cast<uint8_t>(x);
    t.log[x] = static_cast<uint8_t>(i);
    x <<= 1;
    if (x & 0x100) x ^= kFieldPolynomial;
  }
  for (int i = 255; i < 512; ++i) t.exp[i] = t.exp[i - 255];
  return t;
}

inline constexpr GfTables kTables = make_tables();

}  // namespace detail

// Element of GF(2^8).
class Gf256 {
 public:
  constexpr Gf256() = default;
  constexpr explicit Gf256(uint8_t v) : v_(v) {}

  constexpr uint8_t value() const { return v_; }
  constexpr bool is_zero() const { return v_ == 0; }

  friend constexpr Gf256 operator+(Gf256 a, Gf256 b) { return Gf256(a.v_ ^ b.v_); }
  friend constexpr Gf256 operator-(Gf256 a, Gf256 b) { return a + b; }
  friend constexpr Gf256 operator*(Gf256 a, Gf256 b) {
    if (a.v_ == 0 || b.v_ == 0) return Gf256(0);
    return Gf256(detail::kTables.exp[detail::kTables.log[a.v_] + detail::kTables.log[b.v_]]);
  }
  // Precondition: b nonzero.
  friend constexpr Gf256 operator/(Gf256 a, Gf256 b) {
    if (a.v_ == 0) return Gf256(0);
    return Gf256(detail::kTables.exp[detail::kTables.log[a.v_] + 255 - detail::kTables.log[b.v_]]);
  }
  constexpr Gf256& operator+=(Gf256 o) { return *this = *this + o; }
  constexpr Gf256& operator*=(Gf256 o) { return *this = *this * o; }

  // Precondition: nonzero.
  constexpr Gf256 inverse() const { return Gf256(1) / *this; }
  // Precondition: nonzero. Discrete log base alpha, in [0, 255).
  constexpr int log() const { return detail::kTables.log[v_]; }
  static constexpr Gf256 alpha_pow(int e) {
    return Gf256(detail::kTables.exp[((e % 255) + 255) % 255]);
  }

  friend constexpr bool operator==(Gf256, Gf256) = default;

 private:
  uint8_t v_ = 0;
};

constexpr Gf256 gf_mul(Gf256 a, Gf256 b) { return a * b; }

// Multiplication by the primitive element, without tables.
constexpr Gf256 mul_alpha(Gf256 a) {
  const unsigned v = a.value();
  return Gf256(static_cast<uint8_t>((v << 1) ^ ((v & 0x80u) ? (kFieldPolynomial & 0xFFu) : 0u)));
}

}  // namespace rxl::fec
