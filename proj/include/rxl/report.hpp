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

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "rxl/analytics.hpp"
#include "rxl/sim_engine.hpp"

namespace rxl {

using KeyValues = std::vector<std::pair<std::string, std::string>>;

// Fixed CSV column sets.
const std::vector<std::string>& sim_csv_columns();
const std::vector<std::string>& analytic_csv_columns();

// Reports start with a `# key = value` block echoing the resolved config.
void write_config_header(std::ostream& os, const KeyValues& config);

void write_sim_text(std::ostream& os, const SimReport& r);
void write_sim_csv_header(std::ostream& os);
void write_sim_csv_row(std::ostream& os, const SimReport& r);

void write_analytic_text(std::ostream& os, const analytics::AnalyticReport& r);
void write_analytic_csv(std::ostream& os, const analytics::AnalyticReport& r);
void write_curve_csv(std::ostream& os, const std::vector<analytics::CurvePoint>& curve);

}  // namespace rxl
