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
#include <sstream>
#include <string>

#include "rxl/report.hpp"
#include "rxl/scenario.hpp"

#ifndef RXL_SCENARIO_DIR
#error "RXL_SCENARIO_DIR must point at the shipped scenario files"
#endif

namespace rxl {
namespace {

ScenarioConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_scenario(in);
}

void expect_config_error(const std::string& text, const std::string& key, int line) {
  try {
    parse(text);
    FAIL() << "expected ConfigError for:\n" << text;
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.key(), key) << e.what();
    EXPECT_EQ(e.line(), line) << e.what();
    if (line > 0) EXPECT_NE(std::string(e.what()).find("line " + std::to_string(line)), std::string::npos);
  }
}

TEST(Scenario, DefaultsAreTheReferenceSetup) {
  const ScenarioConfig cfg = parse("");
  EXPECT_EQ(cfg.slot_ns, 2.0);
  EXPECT_EQ(cfg.retry_latency_ns, 100.0);
  EXPECT_EQ(cfg.timeout_ns(), 1000.0);
  EXPECT_EQ(cfg.coalesce_k, 10u);
  EXPECT_EQ(cfg.crc_polynomial, Crc64::kEcma182);
}

TEST(Scenario, ParsesEveryKey) {
  const ScenarioConfig cfg = parse(R"(# full example
name = everything
mode = rxl
switch_levels = 3
ber = 1e-6
burst_enabled = true
burst_start_prob = 1e-9
burst_mean_len = 4
uc_rate = 3e-5
drop_rate = 1e-4
internal_error_prob = 1e-7
switch_crc = false
coalesce_k = 8
standalone_ack = yes
slot_ns = 2.5
retry_latency_ns = 80
replay_timeout_ns = 400
flit_count = 123
trials = 2
seed = 0x10
cqid_count = 4
crc_polynomial = 0xAD93D23594C935A9
max_slots = 99999
force.3 = drop, internal_corrupt
force.7 = piggyback:12
messages.0 = Rd@1 Wr@2
)");
  EXPECT_EQ(cfg.name, "everything");
  EXPECT_EQ(cfg.mode, ProtocolMode::kRxl);
  EXPECT_EQ(cfg.switch_levels, 3u);
  EXPECT_EQ(cfg.error.ber, 1e-6);
  EXPECT_TRUE(cfg.error.burst_enabled);
  EXPECT_EQ(cfg.error.burst_mean_len, 4.0);
  EXPECT_FALSE(cfg.switch_crc);
  EXPECT_TRUE(cfg.standalone_ack);
  EXPECT_EQ(cfg.timeout_ns(), 400.0);
  EXPECT_EQ(cfg.seed, 16u);
  EXPECT_EQ(cfg.crc_polynomial, 0xAD93D23594C935A9ULL);
  ASSERT_EQ(cfg.forced.size(), 3u);
  EXPECT_EQ(cfg.forced[2].kind, ForcedKind::kPiggyback);
  EXPECT_EQ(cfg.forced[2].ack, SeqNum(12));
  ASSERT_EQ(cfg.messages.at(0).size(), 2u);
  EXPECT_EQ(cfg.messages.at(0)[1].name, "Wr");
  EXPECT_EQ(cfg.messages.at(0)[1].cqid, 2u);
}

TEST(Scenario, DescribeRoundTrips) {
  const ScenarioConfig a = parse(
      "mode = rxl\nswitch_levels = 2\nber = 3.5e-7\nuc_rate = 1e-5\nforce.2 = drop\n"
      "force.5 = piggyback:9\nmessages.1 = X@3\nflit_count = 10\n");
  std::ostringstream text;
  for (const auto& [k, v] : describe(a)) text << k << " = " << v << "\n";
  const ScenarioConfig b = parse(text.str());
  EXPECT_EQ(describe(a), describe(b));
}

TEST(Scenario, UnknownKeyNamesKeyAndLine) {
  expect_config_error("name = x\n\nswitch_level = 1\n", "switch_level", 3);
}

TEST(Scenario, MalformedValuesAreRejected) {
  expect_config_error("ber = lots\n", "ber", 1);
  expect_config_error("\nflit_count = -3\n", "flit_count", 2);
  expect_config_error("mode = tcp\n", "mode", 1);
  expect_config_error("switch_crc = maybe\n", "switch_crc", 1);
  expect_config_error("force.1 = explode\n", "force.1", 1);
  expect_config_error("force.1 = piggyback:1024\n", "force.1", 1);
  expect_config_error("just some words\n", "", 1);
}

TEST(Scenario, RangeViolationsAreRejected) {
  expect_config_error("switch_levels = 9\n", "switch_levels", 0);
  expect_config_error("ber = 1.5\n", "ber", 0);
  expect_config_error("uc_rate = -0.1\n", "uc_rate", 0);
  expect_config_error("coalesce_k = 600\n", "coalesce_k", 0);
  expect_config_error("crc_polynomial = 0x10\n", "crc_polynomial", 0);
  expect_config_error("flit_count = 4\nforce.4 = drop\n", "force.4", 0);
  expect_config_error("flit_count = 0\n", "flit_count", 0);
  expect_config_error("slot_ns = 0\n", "slot_ns", 0);
  expect_config_error("burst_mean_len = 0.5\n", "burst_mean_len", 0);
}

TEST(Scenario, ShippedFilesLoad) {
  for (const char* name : {"direct", "switched1_baseline", "switched1_rxl", "fig3_drop",
                           "fig4a_duplicate", "fig4b_reorder"}) {
    EXPECT_NO_THROW(load_scenario(std::string(RXL_SCENARIO_DIR) + "/" + name + ".scenario")) << name;
  }
  EXPECT_THROW(load_scenario(std::string(RXL_SCENARIO_DIR) + "/missing.scenario"), ConfigError);
}

TEST(Report, CsvRowMatchesHeaderWidth) {
  ScenarioConfig cfg;
  cfg.flit_count = 10;
  SimReport r;
  r.config = describe(cfg);
  std::ostringstream header, row;
  write_sim_csv_header(header);
  write_sim_csv_row(row, r);
  auto fields = [](const std::string& s) { return std::count(s.begin(), s.end(), ',') + 1; };
  EXPECT_EQ(fields(header.str()), fields(row.str()));
  EXPECT_EQ(static_cast<std::size_t>(fields(header.str())), sim_csv_columns().size());
}

TEST(Report, ConfigHeaderIsCommented) {
  std::ostringstream os;
  write_config_header(os, {{"a", "1"}, {"b", "x"}});
  EXPECT_EQ(os.str(), "# a = 1\n# b = x\n");
}

}  // namespace
}  // namespace rxl
