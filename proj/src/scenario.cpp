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

#include "rxl/scenario.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace rxl {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string where(int line) { return line > 0 ? fmt::format("line {}: ", line) : std::string{}; }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) {
    cur = trim(cur);
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

std::vector<ForcedEvent> parse_forced(uint64_t index, const std::string& key,
                                      const std::string& value, int line) {
  std::vector<ForcedEvent> out;
  for (const std::string& item : split(value, ',')) {
    ForcedEvent ev;
    ev.flit_index = index;
    if (item == "drop") {
      ev.kind = ForcedKind::kDrop;
    } else if (item == "internal_corrupt") {
      ev.kind = ForcedKind::kInternalCorrupt;
    } else if (item.rfind("piggyback", 0) == 0) {
      ev.kind = ForcedKind::kPiggyback;
      const auto colon = item.find(':');
      const uint64_t ack = colon == std::string::npos ? 0 : parse_uint(key, item.substr(colon + 1), line);
      if (ack >= SeqNum::kModulus) {
        throw ConfigError(where(line) + key + ": piggyback ack must be < 1024", key, line);
      }
      ev.ack = SeqNum(static_cast<uint32_t>(ack));
    } else {
      throw ConfigError(where(line) + key + ": unknown forced event '" + item + "'", key, line);
    }
    out.push_back(ev);
  }
  if (out.empty()) throw ConfigError(where(line) + key + ": empty forced event list", key, line);
  return out;
}

std::vector<MessageSpec> parse_messages(const std::string& key, const std::string& value,
                                        int line) {
  std::vector<MessageSpec> out;
  for (const std::string& tok : split(value, ' ')) {
    const auto at = tok.find('@');
    MessageSpec m;
    m.name = tok.substr(0, at);
    if (m.name.empty()) throw ConfigError(where(line) + key + ": empty message name", key, line);
    if (at != std::string::npos) {
      m.cqid = static_cast<uint32_t>(parse_uint(key, tok.substr(at + 1), line));
    }
    out.push_back(std::move(m));
  }
  return out;
}

uint64_t dotted_index(const std::string& key, std::size_t prefix_len, int line) {
  return parse_uint(key, key.substr(prefix_len), line);
}

std::string forced_to_string(const ForcedEvent& ev) {
  switch (ev.kind) {
    case ForcedKind::kDrop: return "drop";
    case ForcedKind::kInternalCorrupt: return "internal_corrupt";
    case ForcedKind::kPiggyback: return fmt::format("piggyback:{}", ev.ack.value());
  }
  return {};
}

}  // namespace

ConfigError::ConfigError(const std::string& message, std::string key, int line)
    : std::runtime_error(message), key_(std::move(key)), line_(line) {}

double parse_double(const std::string& key, const std::string& value, int line) {
  const char* begin = value.c_str();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  if (value.empty() || end != begin + value.size() || errno == ERANGE || !std::isfinite(v)) {
    throw ConfigError(where(line) + key + ": expected a number, got '" + value + "'", key, line);
  }
  return v;
}

uint64_t parse_uint(const std::string& key, const std::string& value, int line) {
  const char* begin = value.c_str();
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(begin, &end, 0);
  if (value.empty() || value[0] == '-' || end != begin + value.size() || errno == ERANGE) {
    throw ConfigError(where(line) + key + ": expected a non-negative integer, got '" + value + "'",
                      key, line);
  }
  return v;
}

bool parse_bool(const std::string& key, const std::string& value, int line) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  throw ConfigError(where(line) + key + ": expected true/false, got '" + value + "'", key, line);
}

std::string format_double(double v) { return fmt::format("{}", v); }

std::vector<std::pair<int, std::pair<std::string, std::string>>> read_key_values(
    std::istream& in) {
  std::vector<std::pair<int, std::pair<std::string, std::string>>> out;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(fmt::format("line {}: expected 'key = value', got '{}'", line, text), {},
                        line);
    }
    std::string key = trim(text.substr(0, eq));
    if (key.empty()) throw ConfigError(fmt::format("line {}: missing key", line), {}, line);
    out.push_back({line, {std::move(key), trim(text.substr(eq + 1))}});
  }
  return out;
}

void apply_scenario_key(ScenarioConfig& cfg, const std::string& key, const std::string& value,
                        int line) {
  if (key == "name") {
    cfg.name = value;
  } else if (key == "mode") {
    if (value == "baseline" || value == "cxl" || value == "cxl_baseline") {
      cfg.mode = ProtocolMode::kCxlBaseline;
    } else if (value == "rxl") {
      cfg.mode = ProtocolMode::kRxl;
    } else {
      throw ConfigError(where(line) + "mode: expected baseline or rxl, got '" + value + "'", key,
                        line);
    }
  } else if (key == "switch_levels") {
    cfg.switch_levels = static_cast<uint32_t>(parse_uint(key, value, line));
  } else if (key == "ber") {
    cfg.error.ber = parse_double(key, value, line);
  } else if (key == "burst_enabled") {
    cfg.error.burst_enabled = parse_bool(key, value, line);
  } else if (key == "burst_start_prob") {
    cfg.error.burst_start_prob = parse_double(key, value, line);
  } else if (key == "burst_mean_len") {
    cfg.error.burst_mean_len = parse_double(key, value, line);
  } else if (key == "uc_rate") {
    cfg.uc_rate = parse_double(key, value, line);
  } else if (key == "drop_rate") {
    cfg.drop_rate = parse_double(key, value, line);
  } else if (key == "internal_error_prob") {
    cfg.internal_error_prob = parse_double(key, value, line);
  } else if (key == "switch_crc") {
    cfg.switch_crc = parse_bool(key, value, line);
  } else if (key == "coalesce_k") {
    cfg.coalesce_k = static_cast<uint32_t>(parse_uint(key, value, line));
  } else if (key == "standalone_ack") {
    cfg.standalone_ack = parse_bool(key, value, line);
  } else if (key == "slot_ns") {
    cfg.slot_ns = parse_double(key, value, line);
  } else if (key == "retry_latency_ns") {
    cfg.retry_latency_ns = parse_double(key, value, line);
  } else if (key == "replay_timeout_ns") {
    cfg.replay_timeout_ns = parse_double(key, value, line);
  } else if (key == "flit_count") {
    cfg.flit_count = parse_uint(key, value, line);
  } else if (key == "trials") {
    cfg.trials = parse_uint(key, value, line);
  } else if (key == "seed") {
    cfg.seed = parse_uint(key, value, line);
  } else if (key == "cqid_count") {
    cfg.cqid_count = static_cast<uint32_t>(parse_uint(key, value, line));
  } else if (key == "crc_polynomial") {
    cfg.crc_polynomial = parse_uint(key, value, line);
  } else if (key == "max_slots") {
    cfg.max_slots = parse_uint(key, value, line);
  } else if (key.rfind("force.", 0) == 0) {
    const uint64_t index = dotted_index(key, 6, line);
    std::erase_if(cfg.forced, [&](const ForcedEvent& e) { return e.flit_index == index; });
    for (const ForcedEvent& ev : parse_forced(index, key, value, line)) cfg.forced.push_back(ev);
    std::stable_sort(cfg.forced.begin(), cfg.forced.end(),
                     [](const ForcedEvent& a, const ForcedEvent& b) {
                       return a.flit_index < b.flit_index;
                     });
  } else if (key.rfind("messages.", 0) == 0) {
    cfg.messages[dotted_index(key, 9, line)] = parse_messages(key, value, line);
  } else {
    throw ConfigError(where(line) + "unknown key '" + key + "'", key, line);
  }
}

void ScenarioConfig::validate() const {
  auto fail = [](const std::string& key, const std::string& msg) {
    throw ConfigError(key + ": " + msg, key);
  };
  try {
    error.validate();
  } catch (const std::invalid_argument& e) {
    const std::string what = e.what();
    throw ConfigError(what, what.substr(0, what.find(' ')));
  }
  auto prob = [&](const char* key, double p) {
    if (!(p >= 0.0 && p <= 1.0)) fail(key, "must be in [0, 1]");
  };
  prob("uc_rate", uc_rate);
  prob("drop_rate", drop_rate);
  prob("internal_error_prob", internal_error_prob);
  if (switch_levels > 8) fail("switch_levels", "must be in 0..8");
  if (!(slot_ns > 0.0)) fail("slot_ns", "must be > 0");
  if (!(retry_latency_ns >= 0.0)) fail("retry_latency_ns", "must be >= 0");
  if (!(timeout_ns() > 0.0)) fail("replay_timeout_ns", "must be > 0");
  if (flit_count < 1) fail("flit_count", "must be >= 1");
  if (trials < 1) fail("trials", "must be >= 1");
  if (cqid_count < 1) fail("cqid_count", "must be >= 1");
  if (coalesce_k > kReplayCapacity) fail("coalesce_k", "must be <= 512 (replay window)");
  if ((crc_polynomial & 1) == 0) fail("crc_polynomial", "must have a nonzero constant term");
  for (const ForcedEvent& ev : forced) {
    if (ev.flit_index >= flit_count) {
      fail(fmt::format("force.{}", ev.flit_index), "flit index beyond flit_count");
    }
    if (ev.kind == ForcedKind::kInternalCorrupt && switch_levels == 0) {
      fail(fmt::format("force.{}", ev.flit_index), "internal_corrupt needs switch_levels >= 1");
    }
  }
  for (const auto& [index, msgs] : messages) {
    if (index >= flit_count) fail(fmt::format("messages.{}", index), "flit index beyond flit_count");
  }
}

ScenarioConfig parse_scenario(std::istream& in) {
  ScenarioConfig cfg;
  for (const auto& [line, kv] : read_key_values(in)) apply_scenario_key(cfg, kv.first, kv.second, line);
  cfg.validate();
  return cfg;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file '" + path + "'");
  return parse_scenario(in);
}

std::vector<std::pair<std::string, std::string>> describe(const ScenarioConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> out = {
      {"name", cfg.name},
      {"mode", std::string(to_string(cfg.mode))},
      {"switch_levels", std::to_string(cfg.switch_levels)},
      {"ber", format_double(cfg.error.ber)},
      {"burst_enabled", cfg.error.burst_enabled ? "true" : "false"},
      {"burst_start_prob", format_double(cfg.error.burst_start_prob)},
      {"burst_mean_len", format_double(cfg.error.burst_mean_len)},
      {"uc_rate", format_double(cfg.uc_rate)},
      {"drop_rate", format_double(cfg.drop_rate)},
      {"internal_error_prob", format_double(cfg.internal_error_prob)},
      {"switch_crc", cfg.switch_crc ? "true" : "false"},
      {"coalesce_k", std::to_string(cfg.coalesce_k)},
      {"standalone_ack", cfg.standalone_ack ? "true" : "false"},
      {"slot_ns", format_double(cfg.slot_ns)},
      {"retry_latency_ns", format_double(cfg.retry_latency_ns)},
      {"replay_timeout_ns", format_double(cfg.timeout_ns())},
      {"flit_count", std::to_string(cfg.flit_count)},
      {"trials", std::to_string(cfg.trials)},
      {"seed", std::to_string(cfg.seed)},
      {"cqid_count", std::to_string(cfg.cqid_count)},
      {"crc_polynomial", fmt::format("0x{:016X}", cfg.crc_polynomial)},
      {"max_slots", std::to_string(cfg.max_slots)},
  };
  std::map<uint64_t, std::string> forced;
  for (const ForcedEvent& ev : cfg.forced) {
    std::string& s = forced[ev.flit_index];
    if (!s.empty()) s += ",";
    s += forced_to_string(ev);
  }
  for (const auto& [index, s] : forced) out.emplace_back(fmt::format("force.{}", index), s);
  for (const auto& [index, msgs] : cfg.messages) {
    std::string s;
    for (const MessageSpec& m : msgs) {
      if (!s.empty()) s += " ";
      s += fmt::format("{}@{}", m.name, m.cqid);
    }
    out.emplace_back(fmt::format("messages.{}", index), s);
  }
  return out;
}

}  // namespace rxl
