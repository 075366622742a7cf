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

#include "rxl/report.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

namespace rxl {
namespace {

std::string sci(double v) { return fmt::format("{:.6e}", v); }

std::string scenario_name(const SimReport& r) {
  for (const auto& [k, v] : r.config) {
    if (k == "name") return v;
  }
  return {};
}

std::string config_value(const SimReport& r, const std::string& key) {
  for (const auto& [k, v] : r.config) {
    if (k == key) return v;
  }
  return {};
}

KeyValues sim_fields(const SimReport& r) {
  return {
      {"scenario", scenario_name(r)},
      {"mode", config_value(r, "mode")},
      {"switch_levels", config_value(r, "switch_levels")},
      {"seed", config_value(r, "seed")},
      {"rng_algorithm", r.rng_algorithm},
      {"flits_sent", std::to_string(r.flits_sent)},
      {"transmissions", std::to_string(r.transmissions)},
      {"retransmissions", std::to_string(r.retransmissions)},
      {"flits_delivered", std::to_string(r.flits_delivered)},
      {"forwards", std::to_string(r.forwards)},
      {"undelivered", std::to_string(r.undelivered)},
      {"fec_corrected", std::to_string(r.fec_corrected)},
      {"fec_uncorrectable_drops", std::to_string(r.fec_uncorrectable_drops)},
      {"crc_drops", std::to_string(r.crc_drops)},
      {"endpoint_uncorrectable", std::to_string(r.endpoint_uncorrectable)},
      {"silent_drops", std::to_string(r.silent_drops)},
      {"crc_nacks", std::to_string(r.crc_nacks)},
      {"nacks", std::to_string(r.nacks)},
      {"retries", std::to_string(r.retries)},
      {"timeouts", std::to_string(r.timeouts)},
      {"duplicates_discarded", std::to_string(r.duplicates_discarded)},
      {"internal_corruptions", std::to_string(r.internal_corruptions)},
      {"ack_flits", std::to_string(r.ack_flits)},
      {"piggybacked_acks", std::to_string(r.piggybacked_acks)},
      {"fail_data", std::to_string(r.fail_data)},
      {"fail_order", std::to_string(r.fail_order.total())},
      {"fail_order_gap", std::to_string(r.fail_order.gap)},
      {"fail_order_duplicate", std::to_string(r.fail_order.duplicate)},
      {"fail_order_reorder", std::to_string(r.fail_order.reorder)},
      {"slots", std::to_string(r.slots)},
      {"channel_busy_ns", format_double(r.channel_busy_ns)},
      {"goodput_flits", std::to_string(r.goodput_flits)},
      {"bw_loss", sci(r.bw_loss)},
      {"ack_overhead", sci(r.ack_overhead)},
      {"cutoff_reached", r.cutoff_reached ? "true" : "false"},
  };
}

KeyValues analytic_fields(const analytics::AnalyticReport& r) {
  return {
      {"fer", sci(r.fer)},
      {"p_correct", sci(r.p_correct)},
      {"fer_ud", sci(r.fer_ud)},
      {"fer_ud_rxl_formula", sci(r.fer_ud_rxl_formula)},
      {"fer_ud_rxl", sci(r.fer_ud_rxl)},
      {"fer_drop", sci(r.fer_drop)},
      {"fer_order", sci(r.fer_order)},
      {"fit_direct", sci(r.fit_direct)},
      {"fit_baseline", sci(r.fit_baseline)},
      {"fit_rxl", sci(r.fit_rxl)},
      {"fit_ratio", sci(r.fit_ratio)},
      {"bw_loss_direct", sci(r.bw_loss_direct)},
      {"bw_loss_switched", sci(r.bw_loss_switched)},
      {"bw_loss_standalone", sci(r.bw_loss_standalone)},
      {"fer_ud_rxl_formula_mismatch", r.fer_ud_rxl_formula_mismatch ? "true" : "false"},
  };
}

std::vector<std::string> keys_of(const KeyValues& kv) {
  std::vector<std::string> out;
  for (const auto& [k, v] : kv) out.push_back(k);
  return out;
}

void write_aligned(std::ostream& os, const KeyValues& kv) {
  std::size_t width = 0;
  for (const auto& [k, v] : kv) width = std::max(width, k.size());
  for (const auto& [k, v] : kv) fmt::print(os, "{:<{}} : {}\n", k, width, v);
}

void write_row(std::ostream& os, const KeyValues& kv) {
  bool first = true;
  for (const auto& [k, v] : kv) {
    os << (first ? "" : ",") << v;
    first = false;
  }
  os << '\n';
}

void write_header_row(std::ostream& os, const std::vector<std::string>& cols) {
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << '\n';
}

}  // namespace

const std::vector<std::string>& sim_csv_columns() {
  static const std::vector<std::string> cols = keys_of(sim_fields(SimReport{}));
  return cols;
}

const std::vector<std::string>& analytic_csv_columns() {
  static const std::vector<std::string> cols = keys_of(analytic_fields({}));
  return cols;
}

void write_config_header(std::ostream& os, const KeyValues& config) {
  for (const auto& [k, v] : config) os << "# " << k << " = " << v << '\n';
}

void write_sim_text(std::ostream& os, const SimReport& r) {
  write_aligned(os, sim_fields(r));
  if (!r.delivered_names.empty()) {
    std::string seq;
    for (const std::string& n : r.delivered_names) seq += (seq.empty() ? "" : ",") + n;
    fmt::print(os, "delivered : {}\n", seq);
  }
}

void write_sim_csv_header(std::ostream& os) { write_header_row(os, sim_csv_columns()); }

void write_sim_csv_row(std::ostream& os, const SimReport& r) { write_row(os, sim_fields(r)); }

void write_analytic_text(std::ostream& os, const analytics::AnalyticReport& r) {
  write_aligned(os, analytic_fields(r));
}

void write_analytic_csv(std::ostream& os, const analytics::AnalyticReport& r) {
  write_header_row(os, analytic_csv_columns());
  write_row(os, analytic_fields(r));
}

void write_curve_csv(std::ostream& os, const std::vector<analytics::CurvePoint>& curve) {
  os << "level,fit_baseline,fit_rxl\n";
  for (const auto& p : curve) {
    fmt::print(os, "{},{},{}\n", p.level, sci(p.fit_baseline), sci(p.fit_rxl));
  }
}

}  // namespace rxl
