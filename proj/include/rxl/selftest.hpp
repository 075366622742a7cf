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

#include <cstdint>
#include <string>
#include <vector>

namespace rxl {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Exhaustive codec property runs: CRC single-bit and burst detection, ISN
// sequence sensitivity, ISN/baseline equivalence at seq 0, FEC single-symbol
// and 3-byte burst correction. Random bases derive from `seed`.
std::vector<CheckResult> run_codec_selftest(uint64_t seed);

}  // namespace rxl
