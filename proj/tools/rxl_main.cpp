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

// rxl: closed-form analysis, flit-level simulation and codec self-tests.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "rxl/analytics.hpp"
#include "rxl/fec_rs.hpp"
#include "rxl/report.hpp"
#include "rxl/scenario.hpp"
#include "rxl/selftest.hpp"
#include "rxl/sim_engine.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitConfig = 2;

constexpr const char* kOutputDirEnv = "RXL_OUTPUT_DIR";

struct CommonOptions {
  std::string output;
  std::string format = "text";
  int verbosity = 0;
};

// Relative output paths resolve against $RXL_OUTPUT_DIR when set.
std::filesystem::path resolve_output(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) return std::filesystem::path(dir) / p;
  }
  return p;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    const auto resolved = resolve_output(path);
    if (resolved.has_parent_path()) std::filesystem::create_directories(resolved.parent_path());
    file_ = std::make_unique<std::ofstream>(resolved);
    if (!*file_) throw std::runtime_error("cannot open output file '" + resolved.string() + "'");
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void write_metadata(std::ostream& os, const std::string& command) {
  fmt::print(os, "# rxl {}\n", command);
  fmt::print(os, "# rs_field_polynomial = 0x{:03X}\n", rxl::fec::kFieldPolynomial);
  fmt::print(os, "# rs_primitive_element = 0x{:02X}\n", rxl::fec::kPrimitiveElement);
  fmt::print(os, "# rs_generator_roots = alpha^0,alpha^1\n");
  fmt::print(os, "# rs_subblock_data_bytes = {},{},{}\n", rxl::fec::kSubBlockDataBytes[0],
             rxl::fec::kSubBlockDataBytes[1], rxl::fec::kSubBlockDataBytes[2]);
}

int run_analyze(const CommonOptions& common, const std::string& config_path,
                const std::optional<double>& ber, const std::optional<double>& fer_uc,
                const std::optional<double>& p_coalescing,
                const std::optional<uint32_t>& levels,
                const std::optional<uint32_t>& max_levels) {
  rxl::analytics::AnalyticConfig cfg;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw rxl::ConfigError("cannot open config file '" + config_path + "'");
    cfg = rxl::analytics::parse_analytic_config(in);
  }
  if (ber) cfg.inputs.ber = *ber;
  if (fer_uc) cfg.inputs.fer_uc = *fer_uc;
  if (p_coalescing) cfg.inputs.p_coalescing = *p_coalescing;
  if (levels) cfg.inputs.switch_levels = *levels;
  if (max_levels) cfg.max_levels = *max_levels;
  try {
    cfg.inputs.validate();
  } catch (const std::domain_error& e) {
    throw rxl::ConfigError(e.what());
  }

  const auto report = rxl::analytics::analyze(cfg.inputs);
  const auto curve = rxl::analytics::fit_curve(cfg.inputs, cfg.max_levels);

  Output out(common.output);
  std::ostream& os = out.stream();
  write_metadata(os, "analyze");
  rxl::write_config_header(os, rxl::analytics::describe(cfg));
  if (report.fer_ud_rxl_formula_mismatch) {
    os << "# note = fer_ud_rxl_formula ((1+fer_uc)*2^-64) does not reproduce the 1.6e-24 "
          "reference value; fer_ud_rxl and fit_rxl use fer_uc*(1+levels*fer_uc)*2^-64\n";
  }
  if (common.format == "csv") {
    rxl::write_analytic_csv(os, report);
  } else {
    rxl::write_analytic_text(os, report);
  }
  os << '\n';
  rxl::write_curve_csv(os, curve);
  return kExitOk;
}

int run_simulate(const CommonOptions& common, const std::vector<std::string>& scenarios,
                 const std::optional<uint64_t>& seed, const std::optional<uint64_t>& flits,
                 const std::string& mode, unsigned parallel) {
  std::vector<rxl::ScenarioConfig> configs;
  for (const std::string& path : scenarios) {
    rxl::ScenarioConfig cfg = rxl::load_scenario(path);
    if (seed) cfg.seed = *seed;
    if (flits) cfg.flit_count = *flits;
    if (!mode.empty()) rxl::apply_scenario_key(cfg, "mode", mode);
    cfg.validate();
    configs.push_back(std::move(cfg));
  }

  Output out(common.output);
  std::ostream& os = out.stream();
  write_metadata(os, "simulate");
  const bool csv = common.format == "csv";
  std::vector<rxl::SimReport> reports;
  for (const rxl::ScenarioConfig& cfg : configs) {
    if (common.verbosity > 0) {
      fmt::print(std::cerr, "simulating {} ({} flits x {} trials)\n", cfg.name, cfg.flit_count,
                 cfg.trials);
    }
    reports.push_back(rxl::run_scenario(cfg, parallel));
  }
  if (csv) {
    for (const auto& r : reports) rxl::write_config_header(os, r.config);
    rxl::write_sim_csv_header(os);
    for (const auto& r : reports) rxl::write_sim_csv_row(os, r);
  } else {
    for (std::size_t i = 0; i < reports.size(); ++i) {
      if (i) os << '\n';
      rxl::write_config_header(os, reports[i].config);
      rxl::write_sim_text(os, reports[i]);
    }
  }
  return kExitOk;
}

int run_selftest(const CommonOptions& common, uint64_t seed) {
  const auto results = rxl::run_codec_selftest(seed);
  Output out(common.output);
  std::ostream& os = out.stream();
  fmt::print(os, "# rxl codec-selftest seed = {}\n", seed);
  bool ok = true;
  for (const auto& r : results) {
    fmt::print(os, "{} {} ({})\n", r.passed ? "PASS" : "FAIL", r.name, r.detail);
    ok = ok && r.passed;
  }
  return ok ? kExitOk : kExitInternal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flit-level link reliability analysis and simulation"};
  app.require_subcommand(1);
  app.fallthrough();
  CommonOptions common;
  app.add_option("-o,--output", common.output, "Output file (default stdout; relative paths use $RXL_OUTPUT_DIR)");
  app.add_option("-f,--format", common.format, "Output format")
      ->check(CLI::IsMember({"text", "csv"}));
  app.add_flag("-v,--verbose", common.verbosity, "Increase verbosity");

  auto* analyze = app.add_subcommand("analyze", "Closed-form reliability and bandwidth figures");
  std::string analyze_config;
  std::optional<double> ber, fer_uc, p_coalescing;
  std::optional<uint32_t> levels, max_levels;
  analyze->add_option("-c,--config", analyze_config, "Analytic config file");
  analyze->add_option("--ber", ber, "Bit error rate");
  analyze->add_option("--fer-uc", fer_uc, "Uncorrectable flit error rate");
  analyze->add_option("--p-coalescing", p_coalescing, "Fraction of flits carrying an AckNum");
  analyze->add_option("--levels", levels, "Switching levels for the table row");
  analyze->add_option("--max-levels", max_levels, "Deepest level of the FIT curve");

  auto* simulate = app.add_subcommand("simulate", "Run scenario files through the simulator");
  std::vector<std::string> scenarios;
  std::optional<uint64_t> seed, flits;
  std::string mode;
  unsigned parallel = 1;
  simulate->add_option("scenarios", scenarios, "Scenario files")->required();
  simulate->add_option("--seed", seed, "Override the scenario seed");
  simulate->add_option("--flits", flits, "Override flit_count");
  simulate->add_option("--mode", mode, "Override the protocol mode")
      ->check(CLI::IsMember({"baseline", "rxl"}));
  simulate->add_option("--parallel", parallel, "Worker threads for independent trials")
      ->check(CLI::PositiveNumber);

  auto* selftest = app.add_subcommand("codec-selftest", "Exhaustive codec property checks");
  uint64_t selftest_seed = 1;
  selftest->add_option("--seed", selftest_seed, "Seed for the random base flits");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*analyze) return run_analyze(common, analyze_config, ber, fer_uc, p_coalescing, levels, max_levels);
    if (*simulate) return run_simulate(common, scenarios, seed, flits, mode, parallel);
    if (*selftest) return run_selftest(common, selftest_seed);
  } catch (const rxl::ConfigError& e) {
    fmt::print(std::cerr, "config error: {}\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    fmt::print(std::cerr, "internal error: {}\n", e.what());
    return kExitInternal;
  }
  return kExitInternal;
}
