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

#include "rxl/analytics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "rxl/scenario.hpp"

namespace rxl::analytics {
namespace {

void require_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error(std::string(name) + " must be in [0, 1], got " + std::to_string(p));
  }
}

// Reference FER_UD for the switched RXL case; only used to flag the
// formula/value mismatch in reports.
constexpr double kPrintedRxlFerUd = 1.6e-24;

}  // namespace

void AnalyticInputs::validate() const {
  require_probability(ber, "ber");
  require_probability(fer_uc, "fer_uc");
  require_probability(p_coalescing, "p_coalescing");
  require_probability(crc_escape, "crc_escape");
  if (!(flit_bits > 0.0)) throw std::domain_error("flit_bits must be > 0");
  if (!(flits_per_sec >= 0.0)) throw std::domain_error("flits_per_sec must be >= 0");
  if (!(slot_ns > 0.0)) throw std::domain_error("slot_ns must be > 0");
  if (!(retry_ns >= 0.0)) throw std::domain_error("retry_ns must be >= 0");
}

double fer_from_ber(double ber, double flit_bits) {
  require_probability(ber, "ber");
  if (ber == 0.0) return 0.0;
  if (ber == 1.0) return 1.0;
  return -std::expm1(flit_bits * std::log1p(-ber));
}

double p_correct(double fer, double fer_uc) {
  if (!(fer > 0.0) || fer_uc > fer || fer_uc < 0.0) {
    throw std::domain_error("p_correct requires fer >= fer_uc >= 0 and fer > 0");
  }
  return 1.0 - fer_uc / fer;
}

double fer_ud(double fer_uc, double crc_escape, FerUdMode mode) {
  return mode == FerUdMode::kDirect ? fer_uc * crc_escape : (1.0 + fer_uc) * crc_escape;
}

double fer_ud_rxl_levels(double fer_uc, double crc_escape, uint32_t levels) {
  return fer_uc * (1.0 + static_cast<double>(levels) * fer_uc) * crc_escape;
}

double fit(double rate_per_flit, double flits_per_sec) {
  return rate_per_flit * flits_per_sec * kSecondsPerHour * kFitHours;
}

double fer_order(double fer_drop, double p_coalescing) { return fer_drop * p_coalescing; }

double bw_loss_retry(double fer_retry, double slot_ns, double retry_ns) {
  return 1.0 - slot_ns / ((1.0 - fer_retry) * slot_ns + fer_retry * (slot_ns + retry_ns));
}

double bw_loss_standalone(double p_coalescing) { return p_coalescing; }

double fit_vs_levels(ProtocolMode mode, uint32_t levels, const AnalyticInputs& in) {
  if (mode == ProtocolMode::kRxl) {
    return fit(fer_ud_rxl_levels(in.fer_uc, in.crc_escape, levels), in.flits_per_sec);
  }
  if (levels == 0) return fit(fer_ud(in.fer_uc, in.crc_escape, FerUdMode::kDirect), in.flits_per_sec);
  const double drop = static_cast<double>(levels) * in.fer_uc;
  return fit(fer_order(drop, in.p_coalescing), in.flits_per_sec);
}

AnalyticReport analyze(const AnalyticInputs& in) {
  in.validate();
  AnalyticReport r;
  r.fer = fer_from_ber(in.ber, in.flit_bits);
  r.p_correct = r.fer >= in.fer_uc && r.fer > 0.0 ? p_correct(r.fer, in.fer_uc) : 0.0;
  r.fer_ud = fer_ud(in.fer_uc, in.crc_escape, FerUdMode::kDirect);
  r.fer_ud_rxl_formula = fer_ud(in.fer_uc, in.crc_escape, FerUdMode::kRxlSwitched);
  r.fer_ud_rxl = fer_ud_rxl_levels(in.fer_uc, in.crc_escape, in.switch_levels);
  r.fer_drop = static_cast<double>(in.switch_levels) * in.fer_uc;
  r.fer_order = fer_order(r.fer_drop, in.p_coalescing);
  r.fit_direct = fit(r.fer_ud, in.flits_per_sec);
  r.fit_baseline = fit_vs_levels(ProtocolMode::kCxlBaseline, in.switch_levels, in);
  r.fit_rxl = fit_vs_levels(ProtocolMode::kRxl, in.switch_levels, in);
  r.fit_ratio = r.fit_rxl > 0.0 ? r.fit_baseline / r.fit_rxl : 0.0;
  r.bw_loss_direct = bw_loss_retry(in.fer_uc, in.slot_ns, in.retry_ns);
  r.bw_loss_switched = bw_loss_retry(static_cast<double>(in.switch_levels + 1) * in.fer_uc,
                                     in.slot_ns, in.retry_ns);
  r.bw_loss_standalone = bw_loss_standalone(in.p_coalescing);
  r.fer_ud_rxl_formula_mismatch =
      std::abs(r.fer_ud_rxl_formula - kPrintedRxlFerUd) > 0.5 * kPrintedRxlFerUd;
  return r;
}

std::vector<CurvePoint> fit_curve(const AnalyticInputs& in, uint32_t max_levels) {
  in.validate();
  std::vector<CurvePoint> out;
  for (uint32_t l = 0; l <= max_levels; ++l) {
    out.push_back({l, fit_vs_levels(ProtocolMode::kCxlBaseline, l, in),
                   fit_vs_levels(ProtocolMode::kRxl, l, in)});
  }
  return out;
}

void apply_analytic_key(AnalyticConfig& cfg, const std::string& key, const std::string& value,
                        int line) {
  AnalyticInputs& in = cfg.inputs;
  if (key == "name") {
    cfg.name = value;
  } else if (key == "ber") {
    in.ber = parse_double(key, value, line);
  } else if (key == "flit_bits") {
    in.flit_bits = parse_double(key, value, line);
  } else if (key == "fer_uc") {
    in.fer_uc = parse_double(key, value, line);
  } else if (key == "p_coalescing") {
    in.p_coalescing = parse_double(key, value, line);
  } else if (key == "flits_per_sec") {
    in.flits_per_sec = parse_double(key, value, line);
  } else if (key == "slot_ns") {
    in.slot_ns = parse_double(key, value, line);
  } else if (key == "retry_ns") {
    in.retry_ns = parse_double(key, value, line);
  } else if (key == "crc_escape") {
    in.crc_escape = parse_double(key, value, line);
  } else if (key == "switch_levels") {
    in.switch_levels = static_cast<uint32_t>(parse_uint(key, value, line));
  } else if (key == "max_levels") {
    cfg.max_levels = static_cast<uint32_t>(parse_uint(key, value, line));
  } else {
    throw ConfigError((line > 0 ? "line " + std::to_string(line) + ": " : std::string{}) +
                          "unknown key '" + key + "'",
                      key, line);
  }
}

AnalyticConfig parse_analytic_config(std::istream& is) {
  AnalyticConfig cfg;
  for (const auto& [line, kv] : read_key_values(is)) apply_analytic_key(cfg, kv.first, kv.second, line);
  try {
    cfg.inputs.validate();
  } catch (const std::domain_error& e) {
    const std::string what = e.what();
    throw ConfigError(what, what.substr(0, what.find(' ')));
  }
  return cfg;
}

std::vector<std::pair<std::string, std::string>> describe(const AnalyticConfig& cfg) {
  const AnalyticInputs& in = cfg.inputs;
  return {
      {"name", cfg.name},
      {"ber", format_double(in.ber)},
      {"flit_bits", format_double(in.flit_bits)},
      {"fer_uc", format_double(in.fer_uc)},
      {"p_coalescing", format_double(in.p_coalescing)},
      {"flits_per_sec", format_double(in.flits_per_sec)},
      {"slot_ns", format_double(in.slot_ns)},
      {"retry_ns", format_double(in.retry_ns)},
      {"crc_escape", format_double(in.crc_escape)},
      {"switch_levels", std::to_string(in.switch_levels)},
      {"max_levels", std::to_string(cfg.max_levels)},
  };
}

}  // namespace rxl::analytics
