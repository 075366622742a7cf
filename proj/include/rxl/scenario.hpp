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
#include <istream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rxl/error_model.hpp"
#include "rxl/link_layer.hpp"

namespace rxl {

// A config file problem, carrying the offending key and line (0 if unknown).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& message, std::string key = {}, int line = 0);
  const std::string& key() const { return key_; }
  int line() const { return line_; }

 private:
  std::string key_;
  int line_;
};

enum class ForcedKind : uint8_t { kDrop, kPiggyback, kInternalCorrupt };

struct ForcedEvent {
  uint64_t flit_index = 0;
  ForcedKind kind = ForcedKind::kDrop;
  SeqNum ack;  // kPiggyback only
};

struct MessageSpec {
  std::string name;
  uint32_t cqid = 0;
};

struct ScenarioConfig {
  std::string name = "scenario";
  ProtocolMode mode = ProtocolMode::kCxlBaseline;
  uint32_t switch_levels = 0;
  ErrorConfig error;                // per link; its seed is derived from `seed`
  double uc_rate = 0.0;             // per link per transmission: forced FEC-uncorrectable
  double drop_rate = 0.0;           // per link per transmission: silent loss
  double internal_error_prob = 0.0;
  bool switch_crc = true;           // baseline switches terminate the link CRC
  uint32_t coalesce_k = 10;         // 0: no periodic ACKs
  bool standalone_ack = false;
  double slot_ns = 2.0;
  double retry_latency_ns = 100.0;
  std::optional<double> replay_timeout_ns;  // default 10 x retry_latency_ns
  uint64_t flit_count = 1000;
  uint64_t trials = 1;
  uint64_t seed = 1;
  uint32_t cqid_count = 1;
  uint64_t crc_polynomial = Crc64::kEcma182;
  uint64_t max_slots = 0;           // 0: automatic cutoff
  std::vector<ForcedEvent> forced;
  std::map<uint64_t, std::vector<MessageSpec>> messages;  // scripted per-flit contents

  double timeout_ns() const { return replay_timeout_ns.value_or(10.0 * retry_latency_ns); }

  // Throws ConfigError.
  void validate() const;
};

// `key = value` lines, `#` comments. Unknown keys are errors.
//   force.<i>    = drop | piggyback:<ack> | internal_corrupt   (comma-separated list)
//   messages.<i> = <name>@<cqid> ...                           (space-separated, may be empty)
ScenarioConfig parse_scenario(std::istream& in);
ScenarioConfig load_scenario(const std::string& path);

// Applies one `key = value` assignment.
void apply_scenario_key(ScenarioConfig& cfg, const std::string& key, const std::string& value,
                        int line = 0);

// Canonical resolved key/value list, in a fixed order; parses back to an
// equivalent config.
std::vector<std::pair<std::string, std::string>> describe(const ScenarioConfig& cfg);

// Shared helpers for the analytic config grammar.
std::vector<std::pair<int, std::pair<std::string, std::string>>> read_key_values(std::istream& in);
double parse_double(const std::string& key, const std::string& value, int line);
uint64_t parse_uint(const std::string& key, const std::string& value, int line);
bool parse_bool(const std::string& key, const std::string& value, int line);
std::string format_double(double v);

}  // namespace rxl
