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
#include <string>
#include <vector>

#include "rxl/link_layer.hpp"

namespace rxl::analytics {

inline constexpr double kCrcEscape = 0x1.0p-64;
inline constexpr double kSecondsPerHour = 3600.0;
inline constexpr double kFitHours = 1.0e9;

struct AnalyticInputs {
  double ber = 1.0e-6;
  double flit_bits = 2048.0;
  double fer_uc = 3.0e-5;
  double p_coalescing = 0.1;
  double flits_per_sec = 5.0e8;
  double slot_ns = 2.0;
  double retry_ns = 100.0;
  double crc_escape = kCrcEscape;
  uint32_t switch_levels = 1;

  // Throws std::domain_error naming the field.
  void validate() const;
};

// 1 - (1 - ber)^flit_bits, evaluated as -expm1(flit_bits * log1p(-ber)).
double fer_from_ber(double ber, double flit_bits);

// 1 - fer_uc / fer. Throws std::domain_error unless fer >= fer_uc and fer > 0.
double p_correct(double fer, double fer_uc);

enum class FerUdMode : uint8_t {
  kDirect,       // fer_uc * escape
  kRxlSwitched,  // (1 + fer_uc) * escape, as printed for the switched RXL case
};
double fer_ud(double fer_uc, double crc_escape, FerUdMode mode);

// Undetected-data rate per flit for RXL behind `levels` switches:
// fer_uc * (1 + levels * fer_uc) * escape. Level 0 equals the direct case.
double fer_ud_rxl_levels(double fer_uc, double crc_escape, uint32_t levels);

// rate * flits_per_sec * 3600 * 1e9
double fit(double rate_per_flit, double flits_per_sec);

double fer_order(double fer_drop, double p_coalescing);

// 1 - slot / ((1 - p) * slot + p * (slot + retry))
double bw_loss_retry(double fer_retry, double slot_ns, double retry_ns);

double bw_loss_standalone(double p_coalescing);

// FIT against switching depth. Baseline: level 0 is the CRC-escape FIT,
// level L >= 1 is fit(L * fer_uc * p_coalescing). RXL: fit(fer_ud_rxl_levels).
double fit_vs_levels(ProtocolMode mode, uint32_t levels, const AnalyticInputs& in);

struct AnalyticReport {
  double fer = 0;
  double p_correct = 0;
  double fer_ud = 0;                 // direct
  double fer_ud_rxl_formula = 0;     // (1 + fer_uc) * escape, printed form
  double fer_ud_rxl = 0;             // fer_ud_rxl_levels at the configured depth
  double fer_drop = 0;               // levels * fer_uc
  double fer_order = 0;
  double fit_direct = 0;
  double fit_baseline = 0;           // at the configured depth
  double fit_rxl = 0;
  double fit_ratio = 0;              // fit_baseline / fit_rxl
  double bw_loss_direct = 0;
  double bw_loss_switched = 0;       // retry rate (levels + 1) * fer_uc
  double bw_loss_standalone = 0;
  bool fer_ud_rxl_formula_mismatch = false;  // printed formula vs printed value
};

AnalyticReport analyze(const AnalyticInputs& in);

struct CurvePoint {
  uint32_t level = 0;
  double fit_baseline = 0;
  double fit_rxl = 0;
};

std::vector<CurvePoint> fit_curve(const AnalyticInputs& in, uint32_t max_levels);

// Analytic config file: same `key = value` grammar; keys are the
// AnalyticInputs field names plus `max_levels` and `name`.
struct AnalyticConfig {
  std::string name = "analysis";
  AnalyticInputs inputs;
  uint32_t max_levels = 8;
};
AnalyticConfig parse_analytic_config(std::istream& in);
void apply_analytic_key(AnalyticConfig& cfg, const std::string& key, const std::string& value,
                        int line = 0);
std::vector<std::pair<std::string, std::string>> describe(const AnalyticConfig& cfg);

}  // namespace rxl::analytics
